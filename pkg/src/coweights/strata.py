"""Admissible index sets, Harder-Narasimhan parabolics, the covering argument
for the deep open substacks, eta-strata, and candidate index enumeration.

Everything here works at the level of indices (dominant rational coweights).
Whether a given index is realized by some bundle is never decided.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

from .coneorder import (
    Certificate,
    ConeProblem,
    Face,
    cone_feasible,
    face_membership,
    is_dominant,
    leq,
    pr_P,
    strictly_feasible,
)
from ._linalg import inverse
from .langlands import retract_shifted, zero_set
from .rootdata import Coweight, GroupData, all_subsets
from .sampling import DEFAULT_BOUND, random_coefficients, random_coweight

GENUS_ZERO_NOTE = (
    "genus 0: a quasi-compact open of Bun_G has finitely many isomorphism classes of points, "
    "so every open substack is co-truncative and no covering is needed"
)
CANDIDATE_NOTE = "candidate indices only; nonemptiness of the corresponding strata is not decided"


@dataclass(frozen=True)
class StratumIndex:
    lam: Coweight
    gamma_M: frozenset[int]

    def to_json(self) -> dict:
        out = {"lambda": [str(x) for x in self.lam.pairings], "gamma_M": sorted(self.gamma_M)}
        if self.lam.central:
            out["central"] = [str(x) for x in self.lam.central]
        return out


@dataclass(frozen=True)
class AdmissibleSet:
    """A polyhedral subset of the dominant cone.

    Every kind is ``{base + sum_{j in gamma} x_j alpha_j dominant}`` with a
    sign condition on ``x``:

    * ``down``: ``x <= 0``, i.e. dominant coweights ``<=_M apex``;
    * ``fiber``: ``x`` free, i.e. the dominant part of a fiber of ``pr_P``;
    * ``singleton``: ``gamma`` empty.
    """

    group: GroupData = field(repr=False)
    kind: str
    gamma: frozenset[int]
    base: Coweight

    @classmethod
    def down(cls, g: GroupData, gamma_M: Iterable[int], apex: Coweight) -> "AdmissibleSet":
        gamma_M = g.check_subset(gamma_M)
        if not is_dominant(g, apex):
            raise ValueError(f"apex {apex} is not dominant")
        return cls(g, "down", gamma_M, apex)

    @classmethod
    def fiber(cls, g: GroupData, gamma_M: Iterable[int], mu: Coweight) -> "AdmissibleSet":
        gamma_M = g.check_subset(gamma_M)
        if face_membership(g, gamma_M, mu) is Face.NONE:
            raise ValueError(f"{mu} does not vanish on the simple roots {sorted(gamma_M)}")
        return cls(g, "fiber", gamma_M, mu)

    @classmethod
    def singleton(cls, g: GroupData, mu: Coweight) -> "AdmissibleSet":
        if not is_dominant(g, mu):
            raise ValueError(f"{mu} is not dominant")
        return cls(g, "singleton", frozenset(), mu)

    @property
    def apex(self) -> Coweight:
        return self.base

    def to_json(self) -> dict:
        return {"kind": self.kind, "gamma_M": sorted(self.gamma), "base": self.base.to_strings()}

    # polyhedral description over the x variables
    def _vars(self) -> list[int]:
        return sorted(self.gamma)

    def _constraint_rows(self, width: int, offset: int = 0) -> list[tuple[list[Fraction], Fraction]]:
        g, js = self.group, self._vars()
        rows = []
        for i in g.gamma_sorted:
            row = [Fraction(0)] * width
            for k, j in enumerate(js):
                row[offset + k] = Fraction(g.cartan[i - 1][j - 1])
            rows.append((row, -self.base.pairing(i)))
        if self.kind == "down":
            for k in range(len(js)):
                row = [Fraction(0)] * width
                row[offset + k] = Fraction(-1)
                rows.append((row, Fraction(0)))
        return rows

    def point(self, x) -> Coweight:
        return self.base + self.group.combine_coroots(dict(zip(self._vars(), x)))


def member(s: AdmissibleSet, lam: Coweight) -> bool:
    g = s.group
    g.check(lam)
    if s.kind == "singleton":
        return lam == s.base
    if not is_dominant(g, lam):
        return False
    if s.kind == "down":
        return leq(g, s.gamma, lam, s.base).holds
    return pr_P(g, s.gamma, lam) == s.base


@dataclass(frozen=True)
class Violation:
    condition: str
    witness: Coweight
    detail: str = ""

    def to_json(self) -> dict:
        return {"condition": self.condition, "witness": self.witness.to_strings(), "detail": self.detail}


@dataclass
class AdmissibilityReport:
    gamma_M: frozenset[int]
    status: dict[str, str]
    violations: list[Violation]
    samples: int = 0

    @property
    def admissible(self) -> bool:
        return all(v == "holds" for v in self.status.values())

    def to_json(self) -> dict:
        return {
            "gamma_M": sorted(self.gamma_M),
            "admissible": self.admissible,
            "status": dict(sorted(self.status.items())),
            "violations": [v.to_json() for v in self.violations],
            "samples": self.samples,
        }


def _unit(width: int, k: int, value=1) -> list[Fraction]:
    row = [Fraction(0)] * width
    row[k] = Fraction(value)
    return row


def check_admissible(
    s: AdmissibleSet,
    gamma_M: Iterable[int],
    samples: int = 0,
    rng: random.Random | None = None,
) -> AdmissibilityReport:
    """Check the three admissibility conditions of ``s`` for the parabolic ``gamma_M``.

    All three are decided exactly by cone feasibility over the polyhedral
    description.  ``S1``: no point of ``s`` moves along a coroot outside
    ``gamma_M``.  ``nz``: no point of ``s`` lies on a wall outside
    ``gamma_M``.  ``S2``: nothing obtained by going down along ``gamma_M``
    coroots from a point of ``s`` (and staying dominant) leaves ``s``;
    leaving ``s`` means picking up a coroot outside ``s.gamma``.  In
    addition, ``samples`` random pairs are tried as a falsification check on
    ``S2``.
    """
    g = s.group
    gamma_M = g.check_subset(gamma_M)
    js = s._vars()
    n = len(js)
    base_rows = s._constraint_rows(n)
    status: dict[str, str] = {}
    violations: list[Violation] = []

    # S1
    status["S1"] = "holds"
    for k, j in enumerate(js):
        if j in gamma_M:
            continue
        signs = (-1,) if s.kind == "down" else (1, -1)
        for sign in signs:
            x = strictly_feasible(ConeProblem(n, (), tuple(base_rows)), [(_unit(n, k, sign), 0)])
            if x is not None:
                status["S1"] = "fails"
                violations.append(
                    Violation("S1", s.point(x), f"pr_P not constant: moves along coroot {j}")
                )
                break
        if status["S1"] == "fails":
            break

    # nz: no point with a vanishing pairing off gamma_M
    status["nz"] = "holds"
    for i in sorted(g.gamma - gamma_M):
        row = [-Fraction(g.cartan[i - 1][j - 1]) for j in js]
        cert = cone_feasible(ConeProblem(n, (), tuple(base_rows) + ((row, s.base.pairing(i)),)))
        if cert.feasible:
            status["nz"] = "fails"
            violations.append(Violation("nz", s.point(cert.point), f"pairing with simple root {i} is <= 0"))
            break

    # S2: variables (x over js, c over gamma_M)
    ms = sorted(gamma_M)
    width = n + len(ms)
    rows = list(s._constraint_rows(width))
    for i in g.gamma_sorted:
        row = [Fraction(0)] * width
        for k, j in enumerate(js):
            row[k] = Fraction(g.cartan[i - 1][j - 1])
        for k, j in enumerate(ms):
            row[n + k] = -Fraction(g.cartan[i - 1][j - 1])
        rows.append((row, -s.base.pairing(i)))
    for k in range(len(ms)):
        rows.append((_unit(width, n + k), Fraction(0)))
    escape = [k for k, j in enumerate(ms) if j not in s.gamma]
    status["S2"] = "holds"
    if escape:
        strict_row = [Fraction(0)] * width
        for k in escape:
            strict_row[n + k] = Fraction(1)
        sol = strictly_feasible(ConeProblem(width, (), tuple(rows)), [(strict_row, 0)])
        if sol is not None:
            lam1 = s.point(sol[:n])
            lam2 = lam1 - g.combine_coroots(dict(zip(ms, sol[n:])))
            status["S2"] = "fails"
            violations.append(Violation("S2", lam2, f"below {lam1} along gamma_M but outside the set"))

    checked = 0
    if samples and rng is not None:
        for _ in range(samples):
            lam1 = _sample_point(s, rng)
            if lam1 is None:
                continue
            lam2 = lam1 - g.combine_coroots(random_coefficients(rng, gamma_M))
            if not is_dominant(g, lam2):
                continue
            checked += 1
            if not member(s, lam2):
                if status["S2"] == "holds":
                    status["S2"] = "fails"
                violations.append(Violation("S2", lam2, f"sampled counterexample below {lam1}"))
                break
    return AdmissibilityReport(gamma_M, status, violations, checked)


def _sample_point(s: AdmissibleSet, rng: random.Random) -> Coweight | None:
    coeffs = random_coefficients(rng, s.gamma, signed=s.kind == "fiber")
    if s.kind == "down":
        coeffs = {j: -c for j, c in coeffs.items()}
    lam = s.base + s.group.combine_coroots(coeffs)
    return lam if is_dominant(s.group, lam) else None


def exists_below_threshold(s: AdmissibleSet, indices: Iterable[int], threshold) -> Coweight | None:
    """A point of ``s`` whose pairing with some simple root in ``indices`` is
    ``<= threshold``, or ``None`` if there is none."""
    n = len(s.gamma)
    base_rows = tuple(s._constraint_rows(n))
    for i in sorted(indices):
        row = [-Fraction(s.group.cartan[i - 1][j - 1]) for j in s._vars()]
        cert = cone_feasible(ConeProblem(n, (), base_rows + ((row, s.base.pairing(i) - Fraction(threshold)),)))
        if cert.feasible:
            return s.point(cert.point)
    return None


def hn_parabolic(g: GroupData, lam: Coweight) -> frozenset[int]:
    """The unique ``gamma_M`` with ``lam`` regular in the corresponding face."""
    if not is_dominant(g, lam):
        raise ValueError(f"{lam} is not dominant")
    return zero_set(g, lam)


def covering_set(g: GroupData, genus: int, lam: Coweight) -> tuple[AdmissibleSet, frozenset[int]]:
    """The admissible set covering ``lam`` in the proof that deep opens are co-truncative.

    ``gamma_M`` collects the simple roots on which ``lam`` pairs to at most
    ``2g - 2`` (non-strict), and the set is the dominant part of
    ``{lam' <=_M lam}``.
    """
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    if genus == 0:
        raise ValueError(GENUS_ZERO_NOTE)
    if not is_dominant(g, lam):
        raise ValueError(f"{lam} is not dominant")
    threshold = 2 * genus - 2
    gamma_M = frozenset(i for i in g.gamma if lam.pairing(i) <= threshold)
    return AdmissibleSet.down(g, gamma_M, lam), gamma_M


def emptiness_problem(g: GroupData, theta: Coweight, lam: Coweight, gamma_M: Iterable[int]) -> ConeProblem:
    """Cone problem for a dominant ``lam'`` with ``lam' <=_G theta`` and ``lam' <=_M lam``.

    Variables are the pairings of ``lam'`` followed by its central coordinates.
    Order conditions are written in coroot coordinates via the inverse
    Cartan matrix.
    """
    gamma_M = g.check_subset(gamma_M)
    g.check(theta, lam)
    r, c = g.rank, g.central_rank
    width = r + c
    inv = g.principal_inverse(g.gamma_sorted)
    theta_coords = g.coroot_coordinates(theta)
    lam_coords = g.coroot_coordinates(lam)
    eqs, ineqs = [], []
    for i in range(r):
        ineqs.append((_unit(width, i), 0))
    for j in range(r):
        row = [-inv[j][k] for k in range(r)] + [Fraction(0)] * c
        ineqs.append((row, -theta_coords[j]))
        if (j + 1) in gamma_M:
            ineqs.append((row, -lam_coords[j]))
        else:
            eqs.append((row, -lam_coords[j]))
    for m in range(c):
        eqs.append((_unit(width, r + m), theta.central[m]))
        eqs.append((_unit(width, r + m), lam.central[m]))
    return ConeProblem(width, tuple(eqs), tuple(ineqs))


def empty_intersection(g: GroupData, theta: Coweight, lam: Coweight, gamma_M: Iterable[int]) -> Certificate:
    """Certificate that no dominant coweight is both ``<=_G theta`` and ``<=_M lam``
    (``infeasible``), or a common point (``feasible``)."""
    if not is_dominant(g, theta):
        raise ValueError(f"theta = {theta} is not dominant")
    if not is_dominant(g, lam):
        raise ValueError(f"lambda = {lam} is not dominant")
    return cone_feasible(emptiness_problem(g, theta, lam, gamma_M))


@dataclass
class CoverReport:
    checked: int = 0
    skipped: int = 0
    failures: list[dict] = field(default_factory=list)
    note: str = ""

    def to_json(self) -> dict:
        out = {"checked": self.checked, "skipped": self.skipped, "failures": self.failures}
        if self.note:
            out["note"] = self.note
        return out


def check_deep(g: GroupData, genus: int, theta: Coweight) -> None:
    """Raise unless ``theta`` is dominant and pairs to at least ``2g - 2`` with every simple root."""
    if not is_dominant(g, theta):
        raise ValueError(f"theta = {theta} is not dominant")
    for i in g.gamma_sorted:
        if theta.pairing(i) < 2 * genus - 2:
            raise ValueError(
                f"theta pairs to {theta.pairing(i)} < 2g-2 = {2 * genus - 2} with simple root {i}"
            )


def check_theorem_cover(
    g: GroupData,
    genus: int,
    theta: Coweight,
    samples: int,
    rng: random.Random,
    bound: int = DEFAULT_BOUND,
    cross_check: bool = False,
) -> CoverReport:
    """Sample dominant ``lam`` outside ``{<= theta}`` and verify the covering step for each.

    Stages reported on failure: ``membership`` (``lam`` in its set),
    ``admissible``, ``condition_g`` (exact, over the whole set), ``emptiness``
    (certificate must be an arithmetically verified refutation) and, with
    ``cross_check``, ``grid`` (no small-denominator point of the set lies
    below ``theta``).
    """
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    g.check(theta)
    if genus == 0:
        return CoverReport(note=GENUS_ZERO_NOTE)
    check_deep(g, genus, theta)
    report = CoverReport()
    threshold = 2 * genus - 2
    attempts = 0
    while report.checked < samples and attempts < 50 * max(samples, 1):
        attempts += 1
        central = theta.central if (g.central_rank and rng.random() < 0.5) else None
        lam = random_coweight(g, rng, bound, dominant=True, central=central)
        if leq(g, g.gamma, lam, theta).holds:
            report.skipped += 1
            continue
        report.checked += 1
        s, gamma_M = covering_set(g, genus, lam)

        def fail(stage, witness, detail=""):
            report.failures.append(
                {"lambda": lam.to_strings(), "stage": stage, "witness": witness.to_strings(), "detail": detail}
            )

        if not member(s, lam):
            fail("membership", lam)
            continue
        adm = check_admissible(s, gamma_M)
        if not adm.admissible:
            v = adm.violations[0]
            fail("admissible", v.witness, v.condition)
            continue
        low = exists_below_threshold(s, g.gamma - gamma_M, threshold)
        if low is not None:
            fail("condition_g", low)
            continue
        problem = emptiness_problem(g, theta, lam, gamma_M)
        cert = cone_feasible(problem)
        if cert.feasible:
            r = g.rank
            fail("emptiness", g.coweight(cert.point[:r], cert.point[r:]))
            continue
        if not cert.verify(problem):
            fail("emptiness", lam, "refutation does not verify")
            continue
        if cross_check:
            bad = _grid_search_below(g, s, theta)
            if bad is not None:
                fail("grid", bad)
    return report


def _grid_search_below(g: GroupData, s: AdmissibleSet, theta: Coweight, steps: int = 4, den: int = 2):
    """Points of ``s`` reached from the apex by coroot steps in ``{0, 1/den, ..}``."""
    js = sorted(s.gamma)
    grid = [Fraction(k, den) for k in range(steps * den + 1)]
    for combo in itertools.product(grid, repeat=len(js)):
        lam = s.base - g.combine_coroots(dict(zip(js, combo)))
        if is_dominant(g, lam) and leq(g, g.gamma, lam, theta).holds:
            return lam
    return None


def eta_stratum(g: GroupData, eta: Coweight, lam: Coweight) -> tuple[StratumIndex, AdmissibleSet]:
    """The eta-stratum with value ``lam``: its parabolic and its index set.

    The index set is ``{lam' dominant : lam' <=_M lam}`` where ``gamma_M`` is
    the zero set of ``lam - eta``; it coincides with the fiber over ``lam``
    of the eta-shifted retraction.
    """
    if not is_dominant(g, eta):
        raise ValueError(f"eta = {eta} is not dominant")
    shifted = lam - eta
    if not is_dominant(g, shifted):
        raise ValueError(f"lambda - eta = {shifted} is not dominant")
    gamma_M = zero_set(g, shifted)
    return StratumIndex(lam, gamma_M), AdmissibleSet.down(g, gamma_M, lam)


def stratum_of(g: GroupData, eta: Coweight, lam: Coweight) -> Coweight:
    """Value of the eta-stratification at a dominant coweight."""
    return retract_shifted(g, eta, lam)


# ---------------------------------------------------------------------------
# candidate enumeration


def _projected_lattice_basis(g: GroupData, gamma_M: frozenset[int]) -> list[list[Fraction]]:
    """Z-basis of ``pr_P(Lambda_G)`` in coordinates (pairings off gamma_M, central)."""
    off = [i for i in g.gamma_sorted if i not in gamma_M]
    gens = []
    for b in g.lattice_basis:
        p = pr_P(g, gamma_M, b)
        gens.append([p.pairing(i) for i in off] + list(p.central))
    d = len(off) + g.central_rank
    if d == 0:
        return []
    den = math.lcm(*(x.denominator for v in gens for x in v))
    mat = Matrix([[int(v[k] * den) for v in gens] for k in range(d)])
    hnf = hermite_normal_form(mat)
    if hnf.shape[1] != d:
        raise AssertionError("projected lattice is not of full rank")
    return [[Fraction(int(hnf[k, col]), den) for k in range(d)] for col in range(d)]


def enumerate_candidates(g: GroupData, theta: Coweight) -> list[StratumIndex]:
    """All ``mu`` in some ``pr_P(Lambda_G)``, regular in the ``P`` face, with ``mu <=_G theta``.

    A dominant ``mu <= theta`` has coroot coordinates between 0 and those of
    ``theta``, so its pairing with simple root ``i`` is at most twice the
    ``i``-th coroot coordinate of ``theta``.  Lattice points in that box are
    enumerated through a Hermite basis of the projected lattice and filtered
    exactly.
    """
    g.check(theta)
    if not is_dominant(g, theta):
        raise ValueError(f"theta = {theta} is not dominant")
    if g.rank > 4:
        raise ValueError("candidate enumeration is only supported up to semisimple rank 4")
    theta_coords = g.coroot_coordinates(theta)
    found: dict[Coweight, StratumIndex] = {}
    for gamma_M in all_subsets(g.gamma):
        off = [i for i in g.gamma_sorted if i not in gamma_M]
        lo = [Fraction(0)] * len(off) + list(theta.central)
        hi = [2 * theta_coords[i - 1] for i in off] + list(theta.central)
        basis = _projected_lattice_basis(g, gamma_M)
        for vec in _lattice_points_in_box(basis, lo, hi):
            pairings = [Fraction(0)] * g.rank
            for k, i in enumerate(off):
                pairings[i - 1] = vec[k]
            mu = g.coweight(pairings, vec[len(off):])
            if face_membership(g, gamma_M, mu) is not Face.REGULAR:
                continue
            if leq(g, g.gamma, mu, theta).holds:
                found[mu] = StratumIndex(mu, gamma_M)
    return sorted(found.values(), key=lambda s: (s.lam.pairings, s.lam.central))


def _lattice_points_in_box(basis: list[list[Fraction]], lo: list[Fraction], hi: list[Fraction]):
    d = len(lo)
    if d == 0:
        yield []
        return
    # columns of B are basis vectors; k = B^{-1} v, bounded coordinatewise over the box
    B = [[basis[col][k] for col in range(d)] for k in range(d)]
    Binv = inverse(B)
    ranges = []
    for row in Binv:
        low = sum((a * (lo[k] if a > 0 else hi[k]) for k, a in enumerate(row)), Fraction(0))
        high = sum((a * (hi[k] if a > 0 else lo[k]) for k, a in enumerate(row)), Fraction(0))
        ranges.append(range(math.floor(low), math.ceil(high) + 1))
    for ks in itertools.product(*ranges):
        vec = [sum((ks[col] * basis[col][k] for col in range(d)), Fraction(0)) for k in range(d)]
        if all(lo[k] <= vec[k] <= hi[k] for k in range(d)):
            yield vec
