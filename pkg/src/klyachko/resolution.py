"""Two-term free resolutions of rank-2 toric bundles on P^2.

A bundle with shifting indices delta sits in a short exact sequence

    0 -> O(left) -> O(m_012) + O(m_120) + O(m_201) -> E -> 0

where left collects the three full_until coefficients and the middle term
for the cyclic permutation (i, j, k) uses full_until on rays i and j but
line_until on ray k.  The maps are not materialized; instead the report
checks everything the filtration side can certify: ranks, the first Chern
class, and the Euler characteristic of a window of twists via
chi(O(k)) = (k+1)(k+2)/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .bundles import ShiftingIndices, rank2_bundle
from .chern import c1
from .cohomology import euler_char
from .fan import Divisor

_CYCLIC = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


@dataclass(frozen=True)
class PerlingResolution:
    """Divisors of the two-term resolution, middle terms in cyclic order."""

    left: Divisor
    middle: tuple[Divisor, Divisor, Divisor]

    @property
    def left_degree(self) -> int:
        return sum(self.left)

    @property
    def middle_degrees(self) -> tuple[int, int, int]:
        return tuple(sum(m) for m in self.middle)


def perling_resolution(delta: ShiftingIndices) -> PerlingResolution:
    """Resolution divisors read off the shifting indices."""
    f, l = delta.full_until, delta.line_until
    middle = []
    for i, j, k in _CYCLIC:
        coeffs = [0, 0, 0]
        coeffs[i] = f[i]
        coeffs[j] = f[j]
        coeffs[k] = l[k]
        middle.append(tuple(coeffs))
    return PerlingResolution(left=tuple(f), middle=tuple(middle))


def chi_line_bundle(degree: int) -> int:
    """Euler characteristic of O(degree) on P^2."""
    return (degree + 1) * (degree + 2) // 2


@dataclass(frozen=True)
class ResolutionReport:
    """Consistency report between a resolution and its bundle's invariants."""

    delta: ShiftingIndices
    resolution: PerlingResolution
    rank_ok: bool
    c1_filtration: int
    c1_resolution: int
    chi_rows: tuple[tuple[int, int, int], ...]  # (twist, chi from resolution, chi of bundle)

    @property
    def c1_ok(self) -> bool:
        return self.c1_filtration == self.c1_resolution

    @property
    def chi_ok(self) -> bool:
        return all(a == b for _, a, b in self.chi_rows)

    @property
    def ok(self) -> bool:
        return self.rank_ok and self.c1_ok and self.chi_ok


def verify_resolution(
    delta: ShiftingIndices, twists: Iterable[int] | None = None
) -> ResolutionReport:
    """Check rank, c1 and chi consistency of the resolution against the bundle.

    chi is compared at every requested twist (default: the 11 twists
    -5..5).  A failing report indicates a bug, not a property of delta.
    """
    if twists is None:
        twists = range(-5, 6)
    res = perling_resolution(delta)
    bundle = rank2_bundle(delta)

    rank_ok = len(res.middle) - 1 == 2

    c1_res = sum(res.middle_degrees) - res.left_degree
    c1_fil = c1(bundle)

    rows = []
    for t in twists:
        chi_res = sum(chi_line_bundle(deg + t) for deg in res.middle_degrees)
        chi_res -= chi_line_bundle(res.left_degree + t)
        chi_bun = euler_char(bundle.twist_by_degree(t))
        rows.append((t, chi_res, chi_bun))

    return ResolutionReport(
        delta=delta,
        resolution=res,
        rank_ok=rank_ok,
        c1_filtration=c1_fil,
        c1_resolution=c1_res,
        chi_rows=tuple(rows),
    )


def format_sequence(res: PerlingResolution) -> str:
    """Human-readable one-line form of the short exact sequence."""

    def divisor_text(coeffs: Sequence[int]) -> str:
        parts = []
        for i, c in enumerate(coeffs):
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            term = f"D{i}" if mag == 1 else f"{mag}*D{i}"
            parts.append(f"{sign} {term}" if parts else f"{sign}{term}")
        return " ".join(parts) if parts else "0"

    middle = " (+) ".join(f"O({divisor_text(m)})" for m in res.middle)
    return f"0 -> O({divisor_text(res.left)}) -> {middle} -> E -> 0"
