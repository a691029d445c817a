"""Root data and coweight lattices for reductive groups of types A-G.

Coweights are stored in *pairing coordinates*: entry ``i`` of
``Coweight.pairings`` is the pairing of the coweight with the simple root
``i``.  Central coordinates (the part of the coweight space on which every
root vanishes) are stored separately.  The simple coroot ``j`` then has
pairing vector equal to column ``j`` of the Cartan matrix.

Cartan convention
-----------------
``cartan[i][j]`` is the pairing of the simple *coroot* ``j`` with the simple
*root* ``i``.  With Bourbaki numbering this is the transpose of the usual
``<alpha_i^vee, alpha_j>`` matrix of the root system of the group.  For G2
(root 1 short) this gives ``[[2, -1], [-3, 2]]``; for B2 (root 2 short)
``[[2, -2], [-1, 2]]``.  All types are built from the same squared-length
table, so the choice is made only in ``_dynkin``.

Dynkin vertices are labelled ``1..r`` throughout the public API.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable

from ._linalg import format_rational, inverse, matvec, to_fraction

SIMPLE_TYPES = "ABCDEFG"

_FACTOR_RE = re.compile(r"([A-G])(\d+)")
_SPEC_RE = re.compile(
    r"^(?P<factors>[A-G]\d+(?:x[A-G]\d+)*)(?: (?P<iso>sc|ad))?(?:\+Z(?P<z>\d+))?$"
)


@dataclass(frozen=True)
class GroupSpec:
    factors: tuple[tuple[str, int], ...]
    isogeny: str = "sc"
    central_rank: int = 0

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a group needs at least one simple factor")
        for kind, rank in self.factors:
            _check_rank(kind, rank)
        if self.isogeny not in ("sc", "ad"):
            raise ValueError(f"unknown isogeny {self.isogeny!r}")
        if self.central_rank < 0:
            raise ValueError("central rank must be nonnegative")

    @property
    def rank(self) -> int:
        return sum(rank for _, rank in self.factors)

    @property
    def dimension(self) -> int:
        return self.rank + self.central_rank

    def __str__(self) -> str:
        text = "x".join(f"{kind}{rank}" for kind, rank in self.factors)
        if self.isogeny != "sc":
            text += f" {self.isogeny}"
        if self.central_rank:
            text += f"+Z{self.central_rank}"
        return text


def _check_rank(kind: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": 6 <= rank <= 8,
        "F": rank == 4,
        "G": rank == 2,
    }.get(kind)
    if ok is None:
        raise ValueError(f"unknown simple type {kind!r}")
    if not ok:
        raise ValueError(f"invalid rank {rank} for type {kind}")


def parse_group_spec(text: str) -> GroupSpec:
    """Parse ``"A2"``, ``"A1xA1 ad"``, ``"A1+Z1"`` and the like."""
    m = _SPEC_RE.match(text.strip())
    if m is None:
        raise ValueError(f"cannot parse group spec {text!r}")
    factors = tuple(
        (kind, int(rank)) for kind, rank in _FACTOR_RE.findall(m.group("factors"))
    )
    return GroupSpec(
        factors=factors,
        isogeny=m.group("iso") or "sc",
        central_rank=int(m.group("z") or 0),
    )


# Squared root lengths and edges (Bourbaki numbering, 0-based here).
def _dynkin(kind: str, n: int) -> tuple[list[Fraction], list[tuple[int, int]]]:
    chain_edges = [(i, i + 1) for i in range(n - 1)]
    one, two, three = Fraction(1), Fraction(2), Fraction(3)
    if kind == "A":
        return [two] * n, chain_edges
    if kind == "B":
        return [two] * (n - 1) + [one], chain_edges
    if kind == "C":
        return [one] * (n - 1) + [two], chain_edges
    if kind == "D":
        return [two] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if kind == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)]
        return [two] * n, edges
    if kind == "F":
        return [two, two, one, one], chain_edges
    if kind == "G":
        return [one, three], [(0, 1)]
    raise ValueError(kind)


def _simple_cartan(kind: str, n: int) -> list[list[int]]:
    lengths, edges = _dynkin(kind, n)
    gram = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = lengths[i]
    for i, j in edges:
        # inner product of adjacent simple roots: -max(len^2)/2
        gram[i][j] = gram[j][i] = -max(lengths[i], lengths[j]) / 2
    cartan = []
    for i in range(n):
        row = []
        for j in range(n):
            value = 2 * gram[i][j] / gram[j][j]
            assert value.denominator == 1
            row.append(int(value))
        cartan.append(row)
    return cartan


@dataclass(frozen=True)
class Coweight:
    """An exact rational coweight in pairing coordinates."""

    pairings: tuple[Fraction, ...]
    central: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pairings", tuple(to_fraction(x) for x in self.pairings))
        object.__setattr__(self, "central", tuple(to_fraction(x) for x in self.central))

    def _check(self, other: "Coweight") -> None:
        if len(self.pairings) != len(other.pairings) or len(self.central) != len(other.central):
            raise ValueError("coweights of different groups")

    def __add__(self, other: "Coweight") -> "Coweight":
        self._check(other)
        return Coweight(
            tuple(a + b for a, b in zip(self.pairings, other.pairings)),
            tuple(a + b for a, b in zip(self.central, other.central)),
        )

    def __sub__(self, other: "Coweight") -> "Coweight":
        self._check(other)
        return Coweight(
            tuple(a - b for a, b in zip(self.pairings, other.pairings)),
            tuple(a - b for a, b in zip(self.central, other.central)),
        )

    def __neg__(self) -> "Coweight":
        return Coweight(tuple(-a for a in self.pairings), tuple(-a for a in self.central))

    def scale(self, c) -> "Coweight":
        c = to_fraction(c)
        return Coweight(tuple(c * a for a in self.pairings), tuple(c * a for a in self.central))

    def pairing(self, i: int) -> Fraction:
        """Pairing with simple root ``i`` (1-based)."""
        return self.pairings[i - 1]

    def to_strings(self) -> list[str]:
        return [format_rational(x) for x in self.pairings + self.central]

    def __str__(self) -> str:
        text = ",".join(format_rational(x) for x in self.pairings)
        if self.central:
            text += ";" + ",".join(format_rational(x) for x in self.central)
        return text


@dataclass(frozen=True, order=True)
class Root:
    """A root, given by its coefficients on the simple roots."""

    coefs: tuple[int, ...]

    def __post_init__(self):
        if not any(self.coefs):
            raise ValueError("the zero vector is not a root")
        if not (all(c >= 0 for c in self.coefs) or all(c <= 0 for c in self.coefs)):
            raise ValueError(f"mixed-sign coefficients {self.coefs}")

    @property
    def positive(self) -> bool:
        return all(c >= 0 for c in self.coefs)

    @property
    def sign(self) -> str:
        return "positive" if self.positive else "negative"

    def coef(self, i: int) -> int:
        return self.coefs[i - 1]

    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i, c in enumerate(self.coefs) if c)

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coefs))


@dataclass(frozen=True)
class GroupData:
    spec: GroupSpec
    cartan: tuple[tuple[int, ...], ...]
    lattice_basis: tuple[Coweight, ...]
    _inverses: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def central_rank(self) -> int:
        return self.spec.central_rank

    @property
    def gamma(self) -> frozenset[int]:
        return frozenset(range(1, self.rank + 1))

    def coweight(self, pairings: Iterable, central: Iterable = ()) -> Coweight:
        lam = Coweight(tuple(pairings), tuple(central))
        self.check(lam)
        return lam

    def zero(self) -> Coweight:
        return Coweight((0,) * self.rank, (0,) * self.central_rank)

    def check(self, *lams: Coweight) -> None:
        for lam in lams:
            if len(lam.pairings) != self.rank or len(lam.central) != self.central_rank:
                raise ValueError(
                    f"coweight {lam} does not belong to {self.spec} "
                    f"(expected {self.rank} pairings and {self.central_rank} central coordinates)"
                )

    def check_subset(self, gamma_M: Iterable[int]) -> frozenset[int]:
        gamma_M = frozenset(gamma_M)
        if not gamma_M <= self.gamma:
            raise ValueError(f"{sorted(gamma_M)} is not a subset of the Dynkin vertices 1..{self.rank}")
        return gamma_M

    def coroot(self, j: int) -> Coweight:
        return Coweight(tuple(row[j - 1] for row in self.cartan), (0,) * self.central_rank)

    def fundamental_coweight(self, j: int) -> Coweight:
        return Coweight(tuple(int(i == j) for i in self.gamma_sorted), (0,) * self.central_rank)

    @cached_property
    def gamma_sorted(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    def combine_coroots(self, coefficients: dict[int, Fraction]) -> Coweight:
        """Return the coweight ``sum_j c_j alpha_j`` (zero central part)."""
        pairings = [Fraction(0)] * self.rank
        for j, c in coefficients.items():
            if c:
                for i in range(self.rank):
                    pairings[i] += self.cartan[i][j - 1] * c
        return Coweight(tuple(pairings), (0,) * self.central_rank)

    def principal_inverse(self, subset: Iterable[int]) -> tuple[tuple[Fraction, ...], ...]:
        """Inverse of the principal Cartan submatrix on ``subset`` (sorted order)."""
        key = tuple(sorted(subset))
        inv = self._inverses.get(key)
        if inv is None:
            sub = [[self.cartan[i - 1][j - 1] for j in key] for i in key]
            inv = inverse(sub) if key else ()
            self._inverses[key] = inv
        return inv

    def solve_principal(self, subset: Iterable[int], rhs: dict[int, Fraction]) -> dict[int, Fraction]:
        """Solve ``A_II c = rhs`` on the index set ``I``; returns ``{j: c_j}``."""
        key = tuple(sorted(subset))
        inv = self.principal_inverse(key)
        values = matvec(inv, [rhs[i] for i in key])
        return dict(zip(key, values))

    def coroot_coordinates(self, lam: Coweight) -> tuple[Fraction, ...]:
        """Coefficients of the semisimple part of ``lam`` on the simple coroots."""
        inv = self.principal_inverse(self.gamma_sorted)
        return tuple(matvec(inv, lam.pairings))

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        return tuple(enumerate_roots(self))

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.roots if r.positive)

    def simple_root(self, i: int) -> Root:
        return Root(tuple(int(k == i) for k in self.gamma_sorted))

    def __str__(self) -> str:
        return str(self.spec)


def build_group(spec: GroupSpec | str) -> GroupData:
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    r = spec.rank
    cartan = [[0] * r for _ in range(r)]
    offset = 0
    for kind, n in spec.factors:
        block = _simple_cartan(kind, n)
        for i in range(n):
            for j in range(n):
                cartan[offset + i][offset + j] = block[i][j]
        offset += n
    cartan_t = tuple(tuple(row) for row in cartan)
    zeros = (0,) * spec.central_rank
    if spec.isogeny == "sc":
        semisimple = [Coweight(tuple(row[j] for row in cartan_t), zeros) for j in range(r)]
    else:
        semisimple = [Coweight(tuple(int(i == j) for i in range(r)), zeros) for j in range(r)]
    central = [
        Coweight((0,) * r, tuple(int(k == m) for k in range(spec.central_rank)))
        for m in range(spec.central_rank)
    ]
    return GroupData(spec=spec, cartan=cartan_t, lattice_basis=tuple(semisimple + central))


def enumerate_roots(g: GroupData) -> list[Root]:
    """All roots, built from the simple roots by closure under simple reflections.

    Only positive roots are walked: a simple reflection maps a positive root
    other than the simple root itself to a positive root, and every positive
    root is reached this way from a simple one.
    """
    r = g.rank
    A = g.cartan
    simple = [tuple(int(k == i) for k in range(r)) for i in range(r)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(r):
                # pairing of coroot i with the root beta
                n_i = sum(beta[k] * A[k][i] for k in range(r))
                if n_i == 0:
                    continue
                image = list(beta)
                image[i] -= n_i
                image = tuple(image)
                if any(image) and all(c >= 0 for c in image) and image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    positives = sorted(seen, key=lambda c: (sum(c), c))
    return [Root(c) for c in positives] + [Root(tuple(-x for x in c)) for c in positives]


def levi_roots(g: GroupData, gamma_M: Iterable[int]) -> list[Root]:
    """Roots of the Levi subgroup attached to ``gamma_M``."""
    gamma_M = g.check_subset(gamma_M)
    return [root for root in g.roots if root.support() <= gamma_M]


def root_count(kind: str, n: int) -> int:
    """Closed-form number of roots of a simple type."""
    return {
        "A": n * (n + 1),
        "B": 2 * n * n,
        "C": 2 * n * n,
        "D": 2 * n * (n - 1),
        "E": {6: 72, 7: 126, 8: 240}.get(n, 0),
        "F": 48,
        "G": 12,
    }[kind]


def all_subsets(gamma: Iterable[int]) -> list[frozenset[int]]:
    """Subsets of ``gamma`` ordered by size, then lexicographically."""
    items = sorted(gamma)
    out = [frozenset()]
    for k in range(1, len(items) + 1):
        out.extend(frozenset(c) for c in combinations(items, k))
    return out


__all__ = [
    "Coweight",
    "GroupData",
    "GroupSpec",
    "Root",
    "all_subsets",
    "build_group",
    "enumerate_roots",
    "levi_roots",
    "parse_group_spec",
    "root_count",
]
