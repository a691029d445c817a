"""Seeded random coweights with small denominators.

Numerators are uniform in ``[-bound, bound]`` and denominators are drawn
from ``DENOMINATORS``, which covers the denominators of inverse Cartan
matrices in low rank.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable

from .rootdata import Coweight, GroupData

DENOMINATORS = (1, 2, 3, 4, 6)
DEFAULT_BOUND = 12


def make_rng(seed: int | None) -> random.Random:
    return random.Random(seed)


def random_rational(rng: random.Random, bound: int = DEFAULT_BOUND, nonneg: bool = False) -> Fraction:
    num = rng.randint(-bound, bound)
    if nonneg:
        num = abs(num)
    return Fraction(num, rng.choice(DENOMINATORS))


def random_coweight(
    g: GroupData,
    rng: random.Random,
    bound: int = DEFAULT_BOUND,
    dominant: bool = False,
    central: Iterable | None = None,
) -> Coweight:
    pairings = tuple(random_rational(rng, bound, nonneg=dominant) for _ in range(g.rank))
    if central is None:
        central = tuple(random_rational(rng, bound) for _ in range(g.central_rank))
    return g.coweight(pairings, tuple(central))


def random_coefficients(
    rng: random.Random, support: Iterable[int], bound: int = 4, signed: bool = False
) -> dict[int, Fraction]:
    """Random coroot coefficients on ``support``; nonnegative unless ``signed``."""
    out = {}
    for j in sorted(support):
        num = rng.randint(-bound if signed else 0, bound)
        out[j] = Fraction(num, rng.choice(DENOMINATORS))
    return out


def random_above(g: GroupData, rng: random.Random, lam: Coweight, bound: int = 4) -> Coweight:
    """``lam`` plus a random nonnegative combination of simple coroots."""
    return lam + g.combine_coroots(random_coefficients(rng, g.gamma, bound))
