"""Dominance order, dominant cone faces, the parabolic projector, and an exact
Fourier-Motzkin feasibility engine with Farkas refutations."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from ._linalg import format_rational, parse_rational, to_fraction
from .rootdata import Coweight, GroupData


class Comparison(NamedTuple):
    """Outcome of a dominance comparison.

    ``coefficients`` maps each vertex of the Levi to the coefficient of its
    simple coroot in ``lam2 - lam1``; it is ``None`` when the difference does
    not lie in the span of those coroots at all.
    """

    holds: bool
    coefficients: dict[int, Fraction] | None

    def __bool__(self) -> bool:
        return self.holds


def coroot_expansion(g: GroupData, gamma_M: Iterable[int], diff: Coweight) -> dict[int, Fraction] | None:
    """Write ``diff`` as a combination of the coroots indexed by ``gamma_M``.

    Returns the unique coefficients, or ``None`` if ``diff`` is outside the
    span (nonzero central part or a nonvanishing residual off ``gamma_M``).
    """
    gamma_M = g.check_subset(gamma_M)
    g.check(diff)
    if any(diff.central):
        return None
    coeffs = g.solve_principal(gamma_M, {i: diff.pairing(i) for i in gamma_M})
    for i in g.gamma - gamma_M:
        residual = diff.pairing(i) - sum(
            (g.cartan[i - 1][j - 1] * c for j, c in coeffs.items()), Fraction(0)
        )
        if residual != 0:
            return None
    return coeffs


def leq(g: GroupData, gamma_M: Iterable[int], lam1: Coweight, lam2: Coweight) -> Comparison:
    """Decide ``lam1 <=_M lam2``: the difference is a nonnegative combination
    of the simple coroots indexed by ``gamma_M``."""
    g.check(lam1, lam2)
    coeffs = coroot_expansion(g, gamma_M, lam2 - lam1)
    if coeffs is None:
        return Comparison(False, None)
    return Comparison(all(c >= 0 for c in coeffs.values()), coeffs)


def leq_G(g: GroupData, lam1: Coweight, lam2: Coweight) -> Comparison:
    return leq(g, g.gamma, lam1, lam2)


def is_dominant(g: GroupData, lam: Coweight) -> bool:
    g.check(lam)
    return all(x >= 0 for x in lam.pairings)


def pr_P(g: GroupData, gamma_M: Iterable[int], lam: Coweight) -> Coweight:
    """Project onto the face killed by the simple roots in ``gamma_M``, along
    the coroots of the Levi."""
    gamma_M = g.check_subset(gamma_M)
    g.check(lam)
    if not gamma_M:
        return lam
    d = g.solve_principal(gamma_M, {i: lam.pairing(i) for i in gamma_M})
    return lam - g.combine_coroots(d)


class Face(enum.Enum):
    """Most specific of the three face conditions attached to a parabolic."""

    REGULAR = "++"      # zero on gamma_M, strictly positive elsewhere
    DOMINANT = "+"      # zero on gamma_M, nonnegative elsewhere
    LINEAR = "linear"   # zero on gamma_M
    NONE = "none"


def face_membership(g: GroupData, gamma_M: Iterable[int], lam: Coweight) -> Face:
    gamma_M = g.check_subset(gamma_M)
    g.check(lam)
    if any(lam.pairing(i) != 0 for i in gamma_M):
        return Face.NONE
    off = [lam.pairing(i) for i in g.gamma - gamma_M]
    if all(x > 0 for x in off):
        return Face.REGULAR
    if all(x >= 0 for x in off):
        return Face.DOMINANT
    return Face.LINEAR


# ---------------------------------------------------------------------------
# Exact linear feasibility

Row = tuple[Fraction, ...]


@dataclass(frozen=True)
class ConeProblem:
    """``equalities``: ``row . x == rhs``; ``inequalities``: ``row . x >= rhs``."""

    dimension: int
    equalities: tuple[tuple[Row, Fraction], ...] = ()
    inequalities: tuple[tuple[Row, Fraction], ...] = ()

    def __post_init__(self):
        def norm(items):
            out = []
            for row, rhs in items:
                row = tuple(to_fraction(a) for a in row)
                if len(row) != self.dimension:
                    raise ValueError(f"row of length {len(row)} in a problem of dimension {self.dimension}")
                out.append((row, to_fraction(rhs)))
            return tuple(out)

        object.__setattr__(self, "equalities", norm(self.equalities))
        object.__setattr__(self, "inequalities", norm(self.inequalities))

    @property
    def constraints(self) -> list[tuple[Row, Fraction, bool]]:
        """All constraints, equalities first; the flag marks equalities."""
        return [(r, b, True) for r, b in self.equalities] + [(r, b, False) for r, b in self.inequalities]

    def satisfied_by(self, point: Sequence) -> bool:
        point = [to_fraction(x) for x in point]
        if len(point) != self.dimension:
            return False
        for row, rhs, is_eq in self.constraints:
            value = sum((a * x for a, x in zip(row, point)), Fraction(0))
            if (value != rhs) if is_eq else (value < rhs):
                return False
        return True


@dataclass(frozen=True)
class Certificate:
    """Witness for a feasibility decision.

    For ``kind == "infeasible"`` the ``farkas`` multipliers (equalities first,
    then inequalities) are nonnegative on inequalities, combine the rows to
    zero, and combine the right-hand sides to a positive number: ``0 >= positive``.
    """

    kind: str
    point: tuple[Fraction, ...] | None = None
    farkas: tuple[Fraction, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.kind == "feasible"

    def verify(self, problem: ConeProblem) -> bool:
        if self.kind == "feasible":
            return self.point is not None and problem.satisfied_by(self.point)
        if self.kind != "infeasible" or self.farkas is None:
            return False
        cons = problem.constraints
        if len(self.farkas) != len(cons):
            return False
        combined = [Fraction(0)] * problem.dimension
        rhs_total = Fraction(0)
        for m, (row, rhs, is_eq) in zip(self.farkas, cons):
            if not is_eq and m < 0:
                return False
            for k, a in enumerate(row):
                combined[k] += m * a
            rhs_total += m * rhs
        return all(c == 0 for c in combined) and rhs_total > 0

    def to_json(self) -> dict:
        if self.kind == "feasible":
            return {"kind": "feasible", "point": [format_rational(x) for x in self.point]}
        return {"kind": "infeasible", "farkas": [format_rational(x) for x in self.farkas]}

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        if data["kind"] == "feasible":
            return cls("feasible", point=tuple(parse_rational(x) for x in data["point"]))
        if data["kind"] == "infeasible":
            return cls("infeasible", farkas=tuple(parse_rational(x) for x in data["farkas"]))
        raise ValueError(f"unknown certificate kind {data['kind']!r}")


class _Cons:
    __slots__ = ("row", "rhs", "mult")

    def __init__(self, row, rhs, mult):
        self.row = row
        self.rhs = rhs
        self.mult = mult


def _normalize(c: _Cons) -> tuple[Row, _Cons] | None:
    lead = next((a for a in c.row if a != 0), None)
    if lead is None:
        return None
    s = 1 / abs(lead)
    if s != 1:
        c = _Cons(tuple(a * s for a in c.row), c.rhs * s, {k: m * s for k, m in c.mult.items()})
    return c.row, c


def _prune(cons: list[_Cons]) -> tuple[list[_Cons], _Cons | None]:
    """Drop trivial and pairwise-dominated constraints; report a contradiction."""
    best: dict[Row, _Cons] = {}
    for c in cons:
        normed = _normalize(c)
        if normed is None:
            if c.rhs > 0:
                return [], c
            continue
        key, c = normed
        old = best.get(key)
        if old is None or c.rhs > old.rhs:
            best[key] = c
    return list(best.values()), None


def _refutation(problem: ConeProblem, bad: _Cons) -> Certificate:
    n_cons = len(problem.equalities) + len(problem.inequalities)
    farkas = tuple(bad.mult.get(k, Fraction(0)) for k in range(n_cons))
    return Certificate("infeasible", farkas=farkas)


def cone_feasible(problem: ConeProblem) -> Certificate:
    """Decide feasibility exactly by Fourier-Motzkin elimination.

    Variables are eliminated from the last one down.  Every derived
    constraint carries its multipliers on the original constraints, so a
    contradiction ``0 >= positive`` is itself the Farkas refutation.  On
    success a point is rebuilt by back-substitution, picking in each
    coordinate the admissible value closest to zero.
    """
    n = problem.dimension
    cons: list[_Cons] = []
    n_eq = len(problem.equalities)
    for k, (row, rhs) in enumerate(problem.equalities):
        cons.append(_Cons(row, rhs, {k: Fraction(1)}))
        cons.append(_Cons(tuple(-a for a in row), -rhs, {k: Fraction(-1)}))
    for k, (row, rhs) in enumerate(problem.inequalities):
        cons.append(_Cons(row, rhs, {n_eq + k: Fraction(1)}))

    cons, bad = _prune(cons)
    if bad is not None:
        return _refutation(problem, bad)

    stages: list[tuple[int, list[_Cons]]] = []
    for v in reversed(range(n)):
        stages.append((v, cons))
        pos = [c for c in cons if c.row[v] > 0]
        neg = [c for c in cons if c.row[v] < 0]
        new = [c for c in cons if c.row[v] == 0]
        for p in pos:
            for q in neg:
                a, b = p.row[v], -q.row[v]
                row = tuple(b * x + a * y for x, y in zip(p.row, q.row))
                mult = dict((k, b * m) for k, m in p.mult.items())
                for k, m in q.mult.items():
                    mult[k] = mult.get(k, Fraction(0)) + a * m
                new.append(_Cons(row, b * p.rhs + a * q.rhs, mult))
        cons, bad = _prune(new)
        if bad is not None:
            return _refutation(problem, bad)

    point = [Fraction(0)] * n
    for v, stage in reversed(stages):
        lo = hi = None
        for c in stage:
            a = c.row[v]
            if a == 0:
                continue
            rest = c.rhs - sum((c.row[u] * point[u] for u in range(v)), Fraction(0))
            bound = rest / a
            if a > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        value = Fraction(0)
        if lo is not None and value < lo:
            value = lo
        if hi is not None and value > hi:
            value = hi
        point[v] = value
    cert = Certificate("feasible", point=tuple(point))
    assert cert.verify(problem), "Fourier-Motzkin back-substitution produced an infeasible point"
    return cert


def strictly_feasible(problem: ConeProblem, strict: Sequence[tuple[Sequence, object]]) -> tuple[Fraction, ...] | None:
    """Find ``x`` satisfying ``problem`` and ``row . x > rhs`` for every strict row.

    Homogenizes ``x = y / s``: the strict system is solvable iff the cone
    system with ``s >= 1`` and every strict row ``>= 1`` is solvable.
    """
    n = problem.dimension

    def lift(row, rhs):
        return tuple(to_fraction(a) for a in row) + (-to_fraction(rhs),)

    eqs = [(lift(r, b), 0) for r, b in problem.equalities]
    ineqs = [(lift(r, b), 0) for r, b in problem.inequalities]
    ineqs.append(((Fraction(0),) * n + (Fraction(1),), 1))
    ineqs.extend((lift(r, b), 1) for r, b in strict)
    cert = cone_feasible(ConeProblem(n + 1, tuple(eqs), tuple(ineqs)))
    if not cert.feasible:
        return None
    *y, s = cert.point
    return tuple(v / s for v in y)


__all__ = [
    "Certificate",
    "Comparison",
    "ConeProblem",
    "Face",
    "cone_feasible",
    "coroot_expansion",
    "face_membership",
    "is_dominant",
    "leq",
    "leq_G",
    "pr_P",
    "strictly_feasible",
]
