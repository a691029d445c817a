"""Command-line front end.

Coweights are written in pairing coordinates with central coordinates after
a semicolon, e.g. ``--lambda 1,-1`` or ``--lambda "2,0;3/2"``.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 check-cover found
failures (the report is still printed).
"""
from __future__ import annotations

import argparse
import json
import re
import secrets
import sys
from pathlib import Path
from typing import Sequence

from . import strata
from ._linalg import parse_vector
from .langlands import UniquenessError, retract, retract_shifted
from .posettop import FinitePoset, SetDescription, classify_cone, classify_finite
from .rootdata import Coweight, GroupData, build_group, enumerate_roots
from .sampling import DEFAULT_BOUND, make_rng
from .vanishing import StrangenessTable, char2_sym2_table, minimal_constants, zero_table

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_FAILURES = 0, 1, 2, 3

_COWEIGHT_FLAGS = ("--lambda", "--theta", "--eta", "--points")
_COWEIGHT_RE = re.compile(r"^[-+\d][-+\d/,;: ]*$")


class UsageError(Exception):
    pass


def _coweight_text(text: str) -> tuple[tuple, tuple]:
    pairing_text, _, central_text = text.partition(";")
    try:
        return parse_vector(pairing_text), parse_vector(central_text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _coweight(g: GroupData, parsed) -> Coweight:
    pairings, central = parsed
    return g.coweight(pairings, central)


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Let ``--lambda -1,2`` through: argparse would read ``-1,2`` as a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _COWEIGHT_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            elif _COWEIGHT_RE.match(nxt):
                out.append(f"{tok}={nxt}")
            else:
                out.extend([tok, nxt])
        else:
            out.append(tok)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", required=True, help='group spec such as "A2", "A1xA1 ad", "A1+Z1"')
    common.add_argument("--json", action="store_true", help="emit JSON instead of a table")

    parser = argparse.ArgumentParser(prog="coweights", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("roots", parents=[common], help="list all roots in simple-coroot coordinates")

    p = sub.add_parser("retract", parents=[common], help="Langlands retraction of a coweight")
    p.add_argument("--lambda", dest="lam", type=_coweight_text, required=True)
    p.add_argument("--eta", type=_coweight_text, help="use the eta-shifted retraction")

    p = sub.add_parser("stratify", parents=[common], help="HN parabolic, eta-stratum and covering set")
    p.add_argument("--lambda", dest="lam", type=_coweight_text, required=True)
    p.add_argument("--eta", type=_coweight_text)
    p.add_argument("--genus", type=int)

    p = sub.add_parser("enumerate", parents=[common], help="candidate indices below theta")
    p.add_argument("--theta", type=_coweight_text, required=True)

    p = sub.add_parser("check-cover", parents=[common], help="sampled check of the covering argument")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--theta", type=_coweight_text, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="numerator bound for sampling")
    p.add_argument("--cross-check", action="store_true", help="also run a small-denominator grid search")

    p = sub.add_parser("classify", parents=[common], help="open / closed / locally closed classification")
    p.add_argument("--poset", type=Path, help='finite poset JSON {"elements": [...], "leq": [[...]]}')
    p.add_argument("--subset", help="comma-separated elements of the poset")
    p.add_argument("--kind", choices=SetDescription.KINDS)
    p.add_argument(
        "--points",
        action="append",
        default=[],
        help="a coweight (generator or point), or lower:upper for interval_union; repeatable",
    )

    p = sub.add_parser("constants", parents=[common], help="minimal vanishing constants c', c''")
    p.add_argument("--genus", type=int)
    p.add_argument("--strangeness", type=Path, help="strangeness table JSON")
    p.add_argument("--preset", choices=("zero", "char2-sym2"), default="zero")
    return parser


def _rows_for(value, prefix: str = "") -> list[tuple[str, str]]:
    if isinstance(value, dict):
        rows = []
        for k in sorted(value):
            rows.extend(_rows_for(value[k], f"{prefix}.{k}" if prefix else str(k)))
        return rows
    if isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        rows = []
        for n, item in enumerate(value):
            rows.extend(_rows_for(item, f"{prefix}[{n}]"))
        return rows
    if isinstance(value, list):
        return [(prefix, ", ".join(str(x) for x in value))]
    return [(prefix, str(value))]


def format_table(result: dict) -> str:
    rows = _rows_for(result)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _cmd_roots(g: GroupData, args) -> dict:
    roots = enumerate_roots(g)
    return {
        "count": len(roots),
        "roots": [{"coefs": list(r.coefs), "sign": r.sign} for r in roots],
    }


def _cmd_retract(g: GroupData, args) -> dict:
    lam = _coweight(g, args.lam)
    if args.eta is not None:
        eta = _coweight(g, args.eta)
        return {"eta": eta.to_strings(), "mu": retract_shifted(g, eta, lam).to_strings()}
    return retract(g, lam).to_json()


def _cmd_stratify(g: GroupData, args) -> dict:
    lam = _coweight(g, args.lam)
    eta = _coweight(g, args.eta) if args.eta is not None else g.zero()
    mu = strata.stratum_of(g, eta, lam)
    index, _ = strata.eta_stratum(g, eta, mu)
    out = {
        "hn_parabolic": sorted(strata.hn_parabolic(g, lam)),
        "eta": eta.to_strings(),
        "stratum": index.to_json(),
    }
    if args.genus is not None:
        if args.genus == 0:
            out["covering"] = {"note": strata.GENUS_ZERO_NOTE}
        else:
            s, gamma_M = strata.covering_set(g, args.genus, lam)
            out["covering"] = {"gamma_M": sorted(gamma_M), "set": s.to_json()}
    return out


def _cmd_enumerate(g: GroupData, args) -> dict:
    theta = _coweight(g, args.theta)
    cands = strata.enumerate_candidates(g, theta)
    return {"count": len(cands), "candidates": [c.to_json() for c in cands], "note": strata.CANDIDATE_NOTE}


def _cmd_check_cover(g: GroupData, args) -> dict:
    theta = _coweight(g, args.theta)
    seed = args.seed if args.seed is not None else secrets.randbelow(2**31)
    report = strata.check_theorem_cover(
        g, args.genus, theta, args.samples, make_rng(seed), bound=args.bound, cross_check=args.cross_check
    )
    out = report.to_json()
    out["seed"] = seed
    return out


def _cmd_classify(g: GroupData, args) -> dict:
    if args.poset is not None:
        if args.kind is not None or args.points:
            raise UsageError("--poset cannot be combined with --kind/--points")
        poset = FinitePoset.from_json(json.loads(args.poset.read_text()))
        names = {str(x): x for x in poset.elements}
        subset = [names[x.strip()] if x.strip() in names else x.strip() for x in (args.subset or "").split(",") if x.strip()]
        return {"class": classify_finite(poset, subset).value}
    if args.kind is None:
        raise UsageError("classify needs --poset or --kind")
    if args.kind == "interval_union":
        items = []
        for text in args.points:
            lo, sep, hi = text.partition(":")
            if not sep:
                raise UsageError(f"interval {text!r} is not of the form lower:upper")
            items.append((_coweight(g, _coweight_text(lo)), _coweight(g, _coweight_text(hi))))
    else:
        items = [_coweight(g, _coweight_text(t)) for t in args.points]
    return classify_cone(g, SetDescription(args.kind, items)).to_json()


def _cmd_constants(g: GroupData, args) -> dict:
    if args.strangeness is not None:
        table = StrangenessTable.load(args.strangeness, args.genus)
    elif args.genus is None:
        raise UsageError("constants needs --genus or a --strangeness table with a genus")
    elif args.preset == "char2-sym2":
        table = char2_sym2_table(g, args.genus)
    else:
        table = zero_table(args.genus)
    result = minimal_constants(g, table).to_json()
    result["genus"] = table.genus
    return result


COMMANDS = {
    "roots": _cmd_roots,
    "retract": _cmd_retract,
    "stratify": _cmd_stratify,
    "enumerate": _cmd_enumerate,
    "check-cover": _cmd_check_cover,
    "classify": _cmd_classify,
    "constants": _cmd_constants,
}
SAMPLED = {"check-cover"}


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.command in SAMPLED and args.json and args.seed is None:
        print(f"coweights {args.command}: --seed is required with --json", file=stderr)
        return EXIT_USAGE
    try:
        g = build_group(args.group)
        result = COMMANDS[args.command](g, args)
    except UsageError as exc:
        print(f"coweights {args.command}: {exc}", file=stderr)
        return EXIT_USAGE
    except argparse.ArgumentTypeError as exc:
        print(f"coweights {args.command}: {exc}", file=stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, TypeError, OSError, UniquenessError) as exc:
        print(f"coweights {args.command}: error: {exc}", file=stderr)
        return EXIT_DOMAIN
    if args.json:
        doc = {"command": args.command, "group": str(g.spec), "result": result}
        stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        stdout.write(format_table(result) + "\n")
    if args.command == "check-cover" and result.get("failures"):
        return EXIT_FAILURES
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
