"""Root-space submodules of Levi subgroups and the minimal constants for the
H^0 / H^1 vanishing inequalities, given user-supplied strangeness values."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from ._linalg import parse_rational, to_fraction
from .rootdata import Coweight, GroupData, Root, all_subsets


@dataclass(frozen=True)
class RootModule:
    levi: frozenset[int]
    root: Root
    members: frozenset[Root]

    def to_json(self) -> dict:
        return {
            "levi": sorted(self.levi),
            "root": list(self.root.coefs),
            "members": [list(r.coefs) for r in sorted(self.members)],
        }


def _module_key(g: GroupData, levi: frozenset[int], coefs: tuple[int, ...]) -> tuple:
    """A module is determined by the levi and the root's coefficients off the levi."""
    return (levi, tuple(c for k, c in enumerate(coefs, start=1) if k not in levi))


def root_module(g: GroupData, gamma_Mp: Iterable[int], alpha: Root) -> RootModule:
    """Sum of the root spaces of roots differing from ``alpha`` by the root lattice of the Levi."""
    levi = g.check_subset(gamma_Mp)
    if len(alpha.coefs) != g.rank:
        raise ValueError("root does not belong to this group")
    if alpha.support() <= levi:
        raise ValueError(f"{alpha.coefs} is a root of the Levi {sorted(levi)}")
    key = _module_key(g, levi, alpha.coefs)
    members = frozenset(b for b in g.roots if _module_key(g, levi, b.coefs) == key)
    if alpha not in members:
        raise ValueError(f"{alpha.coefs} is not a root of {g}")
    return RootModule(levi, alpha, members)


@dataclass
class StrangenessTable:
    """Strangeness values keyed by (levi, root, dual); missing entries are 0.

    ``dual=True`` entries give the strangeness of the dual module
    ``V_{M', alpha}^*`` that enters the H^1 bound.  ``dual=False`` entries
    give the strangeness of ``V_{M', alpha}`` itself; for the H^0 bound the
    relevant root is negative.
    """

    genus: int
    entries: list[tuple[frozenset[int], tuple[int, ...], bool, Fraction]] = field(default_factory=list)

    def __post_init__(self):
        for levi, coefs, dual, value in self.entries:
            if to_fraction(value) < 0:
                raise ValueError(f"negative strangeness {value} for {sorted(levi)}, {coefs}")

    def add(self, levi: Iterable[int], root_coefs: Iterable[int], dual: bool, value) -> None:
        value = to_fraction(value)
        if value < 0:
            raise ValueError("strangeness is nonnegative")
        self.entries.append((frozenset(levi), tuple(root_coefs), bool(dual), value))

    def resolved(self, g: GroupData) -> dict[tuple, Fraction]:
        """Entries keyed by module; an entry at any root of a module applies to the module."""
        out: dict[tuple, Fraction] = {}
        for levi, coefs, dual, value in self.entries:
            module = root_module(g, levi, Root(coefs))
            key = (_module_key(g, module.levi, coefs), dual)
            if key in out and out[key] != value:
                raise ValueError(f"conflicting strangeness values for the module of {coefs} over {sorted(levi)}")
            out[key] = value
        return out

    @classmethod
    def from_json(cls, data, genus: int | None = None) -> "StrangenessTable":
        if isinstance(data, list):
            items, file_genus = data, None
        else:
            items, file_genus = data.get("entries", []), data.get("genus")
        if genus is None:
            genus = file_genus
        elif file_genus is not None and file_genus != genus:
            raise ValueError(f"genus {genus} disagrees with the table's genus {file_genus}")
        if genus is None:
            raise ValueError("no genus given")
        table = cls(int(genus))
        for item in items:
            value = item["value"]
            value = parse_rational(value) if isinstance(value, str) else to_fraction(value)
            table.add(item["levi"], item["root_coefs"], item.get("dual", False), value)
        return table

    @classmethod
    def load(cls, path: str | Path, genus: int | None = None) -> "StrangenessTable":
        return cls.from_json(json.loads(Path(path).read_text()), genus)

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "entries": [
                {"levi": sorted(levi), "root_coefs": list(coefs), "dual": dual, "value": str(value)}
                for levi, coefs, dual, value in self.entries
            ],
        }


def zero_table(genus: int) -> StrangenessTable:
    """Characteristic 0: every strangeness vanishes."""
    return StrangenessTable(genus)


def char2_sym2_table(g: GroupData, genus: int) -> StrangenessTable:
    """Characteristic 2 preset for each factor of type C_n.

    In the GL_2 Levi at vertex ``n-1`` the module of the long simple root
    ``n`` is the symmetric square of the standard representation, whose
    strangeness is ``g - 1`` in characteristic 2.
    """
    table = StrangenessTable(genus)
    offset = 0
    for kind, n in g.spec.factors:
        if kind == "C":
            root = tuple(int(k == offset + n) for k in range(1, g.rank + 1))
            table.add({offset + n - 1}, root, True, max(genus - 1, 0))
        offset += n
    return table


@dataclass
class VanishingConstants:
    c_prime: dict[int, Fraction]
    c_double_prime: dict[int, Fraction]
    constraint_counts: dict[int, int]

    def to_json(self) -> dict:
        return {
            "c_prime": {str(i): str(v) for i, v in sorted(self.c_prime.items())},
            "c_double_prime": {str(i): str(v) for i, v in sorted(self.c_double_prime.items())},
            "constraint_counts": {str(i): n for i, n in sorted(self.constraint_counts.items())},
        }


def minimal_constants(g: GroupData, table: StrangenessTable) -> VanishingConstants:
    """Smallest ``c'_i``, ``c''_i`` satisfying every vanishing inequality.

    For each Levi ``M'``, each ``i`` outside it and each root ``alpha`` with
    ``coef_i(alpha) > 0`` the constraints are
    ``coef_i(alpha) c'_i >= 2g - 2 + strng(M', V_{M',alpha}^*)`` and
    ``coef_i(alpha) c''_i >= strng(M', V_{M',-alpha})``.  ``c''`` is clamped
    at 0; ``c'`` is not.
    """
    values = table.resolved(g)
    base = 2 * table.genus - 2
    c1: dict[int, Fraction] = {}
    c2: dict[int, Fraction] = {}
    counts = {i: 0 for i in g.gamma_sorted}
    for levi in all_subsets(g.gamma):
        for i in sorted(g.gamma - levi):
            for alpha in g.positive_roots:
                coef = alpha.coef(i)
                if coef <= 0:
                    continue
                counts[i] += 1
                s_dual = s_neg = Fraction(0)
                if values:
                    s_dual = values.get((_module_key(g, levi, alpha.coefs), True), Fraction(0))
                    neg = tuple(-c for c in alpha.coefs)
                    s_neg = values.get((_module_key(g, levi, neg), False), Fraction(0))
                bound1 = (base + s_dual) / coef
                bound2 = Fraction(s_neg, 1) / coef
                if i not in c1 or bound1 > c1[i]:
                    c1[i] = bound1
                if i not in c2 or bound2 > c2[i]:
                    c2[i] = bound2
    return VanishingConstants(
        c_prime=c1,
        c_double_prime={i: max(v, Fraction(0)) for i, v in c2.items()},
        constraint_counts=counts,
    )


def canonical_levi(g: GroupData, gamma_M: Iterable[int], lam: Coweight) -> frozenset[int]:
    """Vertices of ``gamma_M`` on whose simple roots ``lam`` vanishes."""
    gamma_M = g.check_subset(gamma_M)
    g.check(lam)
    bad = [i for i in gamma_M if lam.pairing(i) < 0]
    if bad:
        raise ValueError(f"{lam} is not dominant for the Levi: negative pairing at {sorted(bad)}")
    return frozenset(i for i in gamma_M if lam.pairing(i) == 0)
