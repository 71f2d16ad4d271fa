"""Chern data of toric bundles.

The first Chern class is read off the filtrations: each ray contributes
the sum over j of j times the dimension drop at j, and on P^2 every
boundary divisor maps to the hyperplane class.  The second Chern number is
recovered from the Euler characteristic through Riemann-Roch on P^2,
chi(E) = rank + c1(c1+3)/2 - c2, which is exact and cross-checked against
the two-term resolutions in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bundles import ToricBundle
from .cohomology import euler_char


@dataclass(frozen=True)
class ChernData:
    rank: int
    c1: int
    c2: int


def c1(bundle: ToricBundle) -> int:
    """Coefficient of the hyperplane class in the first Chern class."""
    total = 0
    for f in bundle.filtrations:
        spaces = f.step_spaces
        for t, (until, _) in enumerate(f.steps):
            total += until * (spaces[t].dim - spaces[t + 1].dim)
    return total


def chern_total(bundle: ToricBundle) -> ChernData:
    """Rank, c1 and c2 of a bundle on P^2."""
    if bundle.fan.dim != 2:
        raise ValueError("Chern data via Riemann-Roch inversion is for P^2 only")
    if not bundle.is_locally_free():
        raise ValueError("Chern data requires a locally free bundle")
    r = bundle.rank
    a = c1(bundle)
    chi = euler_char(bundle)
    return ChernData(rank=r, c1=a, c2=r + a * (a + 3) // 2 - chi)
