"""The Langlands retraction onto the dominant cone and its eta-shifted variant."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coneorder import is_dominant, leq
from .rootdata import Coweight, GroupData, all_subsets


class UniquenessError(AssertionError):
    """Subset enumeration found no retraction value, or two distinct ones."""


@dataclass(frozen=True)
class RetractionResult:
    mu: Coweight
    support: frozenset[int]
    coefficients: dict[int, Fraction]

    def to_json(self) -> dict:
        return {
            "mu": self.mu.to_strings(),
            "support": sorted(self.support),
            "coefficients": {str(i): str(c) for i, c in sorted(self.coefficients.items())},
        }


def retract(g: GroupData, lam: Coweight) -> RetractionResult:
    """Least dominant coweight above ``lam``.

    For each ``I`` the candidate is ``lam + sum_{i in I} c_i alpha_i`` with
    pairings forced to zero on ``I``; it is valid when all ``c_i >= 0`` and
    the candidate is dominant.  Every valid subset must give the same
    candidate; a second value (or none at all) raises ``UniquenessError``.
    The reported support is the first valid subset by size.
    """
    g.check(lam)
    found: RetractionResult | None = None
    for subset in all_subsets(g.gamma):
        c = g.solve_principal(subset, {i: -lam.pairing(i) for i in subset})
        if any(v < 0 for v in c.values()):
            continue
        mu = lam + g.combine_coroots(c)
        if not is_dominant(g, mu):
            continue
        if found is None:
            found = RetractionResult(mu, subset, c)
        elif found.mu != mu:
            raise UniquenessError(f"two retraction values {found.mu} and {mu} for {lam}")
    if found is None:
        raise UniquenessError(f"no retraction value for {lam}")
    return found


def zero_set(g: GroupData, lam: Coweight) -> frozenset[int]:
    return frozenset(i for i in g.gamma if lam.pairing(i) == 0)


def fiber_contains(g: GroupData, mu: Coweight, lam: Coweight) -> bool:
    """Is ``lam`` in the retraction fiber over the dominant ``mu``?

    The fiber is ``mu`` minus nonnegative combinations of the coroots on the
    walls containing ``mu``.
    """
    if not is_dominant(g, mu):
        raise ValueError(f"{mu} is not dominant")
    return leq(g, zero_set(g, mu), lam, mu).holds


def retract_shifted(g: GroupData, eta: Coweight, lam: Coweight) -> Coweight:
    """``L(lam - eta) + eta`` for dominant ``eta`` and ``lam``."""
    if not is_dominant(g, eta):
        raise ValueError(f"eta = {eta} is not dominant")
    if not is_dominant(g, lam):
        raise ValueError(f"lambda = {lam} is not dominant")
    return retract(g, lam - eta).mu + eta


__all__ = ["RetractionResult", "UniquenessError", "fiber_contains", "retract", "retract_shifted", "zero_set"]
