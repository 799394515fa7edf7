"""Shared generators for seeded random algebra objects."""

import random
from fractions import Fraction

import pytest

from bundlehunt.exactalg import LaurentPoly
from bundlehunt.ext1 import ExtCocycle, entry_window
from bundlehunt.p1 import SplittingType
from bundlehunt.qbundle import BigradedEta, ConstantBundleDesc


def random_splitting(rng: random.Random, rank: int, lo: int = -4, hi: int = 4) -> SplittingType:
    return SplittingType(rng.randint(lo, hi) for _ in range(rank))


def random_cocycle(
    rng: random.Random,
    f1: SplittingType,
    f2: SplittingType,
    bound: int = 9,
    variable: str = "z",
) -> ExtCocycle:
    entries = []
    for a in f1.components:
        for b in f2.components:
            lo, hi = entry_window(a, b)
            entries.append(
                LaurentPoly(variable, {e: rng.randint(-bound, bound) for e in range(lo, hi + 1)})
            )
    return ExtCocycle(f1, f2, entries, variable)


def random_desc(
    rng: random.Random,
    max_rank: int = 5,
    comp_lo: int = -3,
    comp_hi: int = 3,
    bound: int = 9,
) -> ConstantBundleDesc:
    r1 = rng.randint(1, max_rank - 1)
    r2 = rng.randint(1, max_rank - r1)
    f1 = random_splitting(rng, r1, comp_lo, comp_hi)
    f2 = random_splitting(rng, r2, comp_lo, comp_hi)
    eta = BigradedEta(
        random_cocycle(rng, f1, f2, bound, "w"),
        random_cocycle(rng, f1, f2, bound, "w"),
    )
    return ConstantBundleDesc(r1, r2, f1, f2, eta)


@pytest.fixture
def rng():
    return random.Random(20250808)
