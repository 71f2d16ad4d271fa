"""Shared helpers: deterministic random bundles and filtrations."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from klyachko import Filtration, ShiftingIndices, Subspace, ToricBundle, projective_fan


def random_subspace(rng: random.Random, ambient: int, dim: int) -> Subspace:
    """A random subspace of the given dimension with small rational entries."""
    while True:
        rows = [
            [Fraction(rng.randint(-3, 3)) for _ in range(ambient)] for _ in range(dim)
        ]
        space = Subspace(rows, ambient)
        if space.dim == dim:
            return space


def random_nested_subspace(rng: random.Random, outer: Subspace, dim: int) -> Subspace:
    """A random subspace of the given dimension inside ``outer``."""
    while True:
        rows = []
        for _ in range(dim):
            coeffs = [Fraction(rng.randint(-2, 2)) for _ in outer.basis]
            rows.append(
                [
                    sum(c * b[j] for c, b in zip(coeffs, outer.basis))
                    for j in range(outer.ambient_dim)
                ]
            )
        space = Subspace(rows, outer.ambient_dim)
        if space.dim == dim:
            return space


def random_filtration(
    rng: random.Random, rank: int, lo: int = -4, hi: int = 4
) -> Filtration:
    """A random full decreasing filtration with thresholds in [lo, hi]."""
    ndrops = rng.randint(1, min(rank, hi - lo + 1))
    dims = sorted(rng.sample(range(1, rank), ndrops - 1), reverse=True)
    dims = [rank] + dims
    spaces = [Subspace.full(rank)]
    for d in dims[1:]:
        spaces.append(random_nested_subspace(rng, spaces[-1], d))
    untils = sorted(rng.sample(range(lo, hi + 1), len(spaces)))
    return Filtration(rank, tuple(zip(untils, spaces)))


def random_bundle(
    rng: random.Random, rank: int, n: int = 2, lo: int = -4, hi: int = 4
) -> ToricBundle:
    fan = projective_fan(n)
    return ToricBundle(
        fan, tuple(random_filtration(rng, rank, lo, hi) for _ in range(fan.nrays))
    )


def random_delta(rng: random.Random, lo: int = -3, hi: int = 3, max_width: int = 4) -> ShiftingIndices:
    full = [rng.randint(lo, hi) for _ in range(3)]
    line = [f + rng.randint(1, max_width) for f in full]
    return ShiftingIndices(tuple(full), tuple(line))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(181100)
