"""Preordered sets as topological spaces (open sets are the down-closed sets),
with exact classification of subsets of finite posets and of described
subsets of the dominant cone."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .coneorder import is_dominant, leq_G
from .rootdata import Coweight, GroupData


class Classification(enum.Enum):
    OPEN = "open"
    CLOSED = "closed"
    LOCALLY_CLOSED = "locally_closed"
    CLOPEN = "clopen"
    NONE = "none"


def _combine(is_open: bool, is_closed: bool, is_convex: bool) -> Classification:
    if is_open and is_closed:
        return Classification.CLOPEN
    if is_open:
        return Classification.OPEN
    if is_closed:
        return Classification.CLOSED
    if is_convex:
        return Classification.LOCALLY_CLOSED
    return Classification.NONE


@dataclass(frozen=True)
class FinitePoset:
    """A finite preorder; ``relation[a][b]`` means ``elements[a] <= elements[b]``."""

    elements: tuple[Hashable, ...]
    relation: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise ValueError("duplicate elements")
        rel = tuple(tuple(bool(x) for x in row) for row in self.relation)
        if len(rel) != n or any(len(row) != n for row in rel):
            raise ValueError(f"relation must be a {n}x{n} matrix")
        for a in range(n):
            if not rel[a][a]:
                raise ValueError(f"relation is not reflexive at {self.elements[a]!r}")
        for a, b, c in itertools.product(range(n), repeat=3):
            if rel[a][b] and rel[b][c] and not rel[a][c]:
                raise ValueError(
                    f"relation is not transitive: {self.elements[a]!r} <= {self.elements[b]!r} "
                    f"<= {self.elements[c]!r}"
                )
        object.__setattr__(self, "relation", rel)

    @classmethod
    def from_pairs(cls, elements: Iterable[Hashable], pairs: Iterable[tuple[Hashable, Hashable]]) -> "FinitePoset":
        """Preorder generated by ``pairs`` (reflexive-transitive closure)."""
        elements = tuple(elements)
        index = {x: k for k, x in enumerate(elements)}
        n = len(elements)
        rel = [[a == b for b in range(n)] for a in range(n)]
        for x, y in pairs:
            rel[index[x]][index[y]] = True
        for k in range(n):
            for a in range(n):
                if rel[a][k]:
                    for b in range(n):
                        if rel[k][b]:
                            rel[a][b] = True
        return cls(elements, tuple(map(tuple, rel)))

    @classmethod
    def chain(cls, elements: Iterable[Hashable]) -> "FinitePoset":
        elements = tuple(elements)
        return cls.from_pairs(elements, zip(elements, elements[1:]))

    @classmethod
    def from_json(cls, data: Mapping) -> "FinitePoset":
        elements = tuple(data["elements"])
        return cls(elements, tuple(tuple(bool(x) for x in row) for row in data["leq"]))

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "leq": [list(row) for row in self.relation]}

    def index(self, x: Hashable) -> int:
        try:
            return self.elements.index(x)
        except ValueError:
            raise KeyError(f"{x!r} is not an element of the poset") from None

    def le(self, x: Hashable, y: Hashable) -> bool:
        return self.relation[self.index(x)][self.index(y)]

    def _indices(self, z: Iterable[Hashable]) -> set[int]:
        return {self.index(x) for x in z}

    def is_down_closed(self, z: Iterable[Hashable]) -> bool:
        idx = self._indices(z)
        return all(b in idx for a in idx for b in range(len(self.elements)) if self.relation[b][a])

    def is_up_closed(self, z: Iterable[Hashable]) -> bool:
        idx = self._indices(z)
        return all(b in idx for a in idx for b in range(len(self.elements)) if self.relation[a][b])

    def is_convex(self, z: Iterable[Hashable]) -> bool:
        """``x1 <= y <= x2`` with ``x1, x2`` in ``z`` forces ``y`` in ``z``."""
        idx = self._indices(z)
        rel = self.relation
        for y in range(len(self.elements)):
            if y in idx:
                continue
            if any(rel[a][y] for a in idx) and any(rel[y][b] for b in idx):
                return False
        return True

    def down_set(self, x: Hashable) -> frozenset:
        k = self.index(x)
        return frozenset(e for j, e in enumerate(self.elements) if self.relation[j][k])


def classify_finite(p: FinitePoset, z: Iterable[Hashable]) -> Classification:
    """Open means down-closed, closed means up-closed, and locally closed
    (intersection of an open and a closed set) means order-convex."""
    z = list(z)
    return _combine(p.is_down_closed(z), p.is_up_closed(z), p.is_convex(z))


def is_monotone_map_continuous(p: FinitePoset, q: FinitePoset, f: Mapping[Hashable, Hashable] | callable) -> bool:
    """Continuity of ``f: p -> q`` for the order topologies.

    Decided twice, once as monotonicity and once by pulling back the basic
    opens (principal down-sets) of ``q``; the two answers must agree.
    """
    fmap = f if callable(f) else f.__getitem__
    image = {x: fmap(x) for x in p.elements}
    for y in image.values():
        q.index(y)
    monotone = all(
        q.le(image[x], image[y]) for x in p.elements for y in p.elements if p.le(x, y)
    )
    continuous = all(
        p.is_down_closed([x for x in p.elements if image[x] in q.down_set(y)]) for y in q.elements
    )
    assert monotone == continuous, "monotonicity and preimage tests disagree"
    return monotone


# ---------------------------------------------------------------------------
# Described subsets of the dominant cone, ordered by <=_G


@dataclass(frozen=True)
class SetDescription:
    """``kind`` is one of ``down_closure``, ``up_closure`` (``items`` are
    generators), ``interval_union`` (``items`` are ``(lower, upper)`` pairs)
    or ``explicit`` (``items`` are the points)."""

    kind: str
    items: tuple

    KINDS = ("down_closure", "up_closure", "interval_union", "explicit")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unsupported set description {self.kind!r}")
        object.__setattr__(self, "items", tuple(self.items))


@dataclass(frozen=True)
class ConeClassification:
    kind: Classification
    reason: str
    witness: Coweight | None = None

    def to_json(self) -> dict:
        out = {"class": self.kind.value, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = self.witness.to_strings()
        return out


def _is_slice_minimum(lam: Coweight) -> bool:
    # 0 <=_G lam for dominant lam since the inverse Cartan matrix is nonnegative,
    # so the zero-pairing point is the least element of its central slice.
    return all(x == 0 for x in lam.pairings)


def _check_points(g: GroupData, points: Iterable[Coweight]) -> None:
    for lam in points:
        if not is_dominant(g, lam):
            raise ValueError(f"{lam} is not dominant")


def _gap_between(g: GroupData, lo: Coweight, hi: Coweight, inside) -> Coweight | None:
    """A dominant point of ``[lo, hi]`` rejected by ``inside``, from a grid
    along the coroot coordinates of ``hi - lo``."""
    coeffs = leq_G(g, lo, hi).coefficients
    steps = [Fraction(k, 4) for k in range(5)]
    for t in itertools.product(steps, repeat=g.rank):
        point = lo + g.combine_coroots({j: tj * coeffs[j] for j, tj in zip(g.gamma_sorted, t)})
        if is_dominant(g, point) and not inside(point):
            return point
    return None


def classify_cone(g: GroupData, desc: SetDescription) -> ConeClassification:
    """Classify a described subset of the dominant cone under ``<=_G``.

    Every answer is exact.  The only refusal is an interval union whose
    intervals are not coherent and in which no gap turns up on a grid; the
    union might then still be convex.
    """
    if desc.kind == "interval_union":
        pts = [x for pair in desc.items for x in pair]
    else:
        pts = list(desc.items)
    _check_points(g, pts)

    if not pts:
        return ConeClassification(Classification.CLOPEN, "empty")
    if g.rank == 0:
        # the order is equality, so every subset is open and closed
        return ConeClassification(Classification.CLOPEN, "discrete order")

    if desc.kind == "down_closure":
        return ConeClassification(Classification.OPEN, "down-closure")

    if desc.kind == "up_closure":
        gens = list(desc.items)
        if all(any(_is_slice_minimum(h) and h.central == x.central for h in gens) for x in gens):
            return ConeClassification(Classification.CLOPEN, "union of central slices")
        return ConeClassification(Classification.CLOSED, "up-closure")

    if desc.kind == "explicit":
        points = list(dict.fromkeys(desc.items))
        for a, b in itertools.permutations(points, 2):
            if leq_G(g, a, b).holds:
                # the segment between two comparable points is infinite
                for den in itertools.count(2):
                    mid = a + (b - a).scale(Fraction(1, den))
                    if mid not in points:
                        return ConeClassification(Classification.NONE, "comparable pair", mid)
        if all(_is_slice_minimum(x) for x in points):
            return ConeClassification(Classification.OPEN, "slice minima")
        return ConeClassification(Classification.LOCALLY_CLOSED, "antichain")

    intervals = [(lo, hi) for lo, hi in desc.items if leq_G(g, lo, hi).holds]
    if not intervals:
        return ConeClassification(Classification.CLOPEN, "empty")

    def inside(lam: Coweight) -> bool:
        return any(leq_G(g, lo, lam).holds and leq_G(g, lam, hi).holds for lo, hi in intervals)

    coherent = True
    for (la, _), (_, ub) in itertools.product(intervals, repeat=2):
        if not leq_G(g, la, ub).holds:
            continue
        if any(leq_G(g, lc, la).holds and leq_G(g, ub, uc).holds for lc, uc in intervals):
            continue
        coherent = False
        gap = _gap_between(g, la, ub, inside)
        if gap is not None:
            return ConeClassification(Classification.NONE, "gap between intervals", gap)
    if not coherent:
        raise ValueError("interval union is not coherent and no gap was found; classification undecided")
    if all(_is_slice_minimum(lo) for lo, _ in intervals):
        return ConeClassification(Classification.OPEN, "intervals from slice minima")
    return ConeClassification(Classification.LOCALLY_CLOSED, "coherent intervals")


__all__ = [
    "Classification",
    "ConeClassification",
    "FinitePoset",
    "SetDescription",
    "classify_cone",
    "classify_finite",
    "is_monotone_map_continuous",
]
