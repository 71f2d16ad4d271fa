"""The census of non-split rank-2 d-aCM toric bundles on P^2 up to twist.

A bundle with shifting indices delta fails the d-aCM condition exactly
when some triple (j_0, j_1, j_2) with each j_i in the line band of ray i
sums to a multiple of d.  Because each band is a contiguous integer
interval, the achievable sums fill the interval [L, U] with
L = sum(full_until_i + 1) and U = sum(line_until_i), so the whole search
collapses to one divisibility check on [L, U].

Canonical representatives: a principal twist (coefficients summing to 0)
pins full_until = -1 on rays 0 and 1, then a unique twist by O(dt) on ray
2 lands the tuple in the normal window.  The resulting set SI(d) consists
of all tuples with

    full_until = (-1, -1, a) for some a >= 0,
    line_until componentwise above full_until,
    sum(line_until) <= d - 1,

and its size is (d-1)d(d+1)(d+2)/24.  Entries carry one of three type
tags: I for tuples already canonical at d-1, II for O(1)-twists of tuples
new at d-1, and III for tuples obtained by widening a single band, counted
by C(d, 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal

from .bundles import ShiftingIndices, ToricBundle, rank2_bundle
from .cohomology import h

TypeTag = Literal["I", "II", "III"]


@dataclass(frozen=True)
class CensusEntry:
    """A canonical shifting-index tuple in SI(d) with its type tag."""

    delta: ShiftingIndices
    d: int
    type_tag: TypeTag


def is_d_acm_fast(delta: ShiftingIndices, d: int) -> bool:
    """Combinatorial d-aCM test: no multiple of d in the band-sum interval."""
    if d < 1:
        raise ValueError(f"modulus d must be positive, got {d}")
    lo = sum(delta.full_until) + 3
    hi = sum(delta.line_until)
    # lo <= hi always since every band is nonempty
    return hi // d < -((-lo) // d)


def is_d_acm_oracle(bundle: ToricBundle, d: int) -> bool:
    """Cohomological d-aCM test: middle cohomology of all twists by O(dt) vanishes.

    Only finitely many t can carry middle cohomology; the scanned range is
    derived from the filtration thresholds, widened by one on each side,
    and a nonzero value in the widened margin raises (it would mean the
    derived range is wrong).
    """
    if d < 1:
        raise ValueError(f"modulus d must be positive, got {d}")
    n = bundle.fan.dim
    lo = sum(f.full_until + 1 for f in bundle.filtrations)
    hi = sum(f.nonzero_until for f in bundle.filtrations)
    t_lo = -(hi // d)        # ceil(-hi / d)
    t_hi = (-lo) // d        # floor(-lo / d)
    result = True
    for t in range(t_lo - 1, t_hi + 2):
        twisted = bundle.twist_by_degree(d * t)
        for p in range(1, n):
            if h(twisted, p) != 0:
                if not t_lo <= t <= t_hi:
                    raise RuntimeError(
                        f"twist range [{t_lo}, {t_hi}] missed middle cohomology at t = {t}"
                    )
                result = False
    return result


def classify_type(delta: ShiftingIndices, d: int) -> TypeTag:
    """Type tag of a canonical tuple: how it arises from the d-1 census."""
    _check_canonical(delta, d)
    line_sum = sum(delta.line_until)
    if line_sum < d - 1:
        return "I"
    if delta.full_until[2] > 0:
        return "II"
    return "III"


def _check_canonical(delta: ShiftingIndices, d: int) -> None:
    if d < 2:
        raise ValueError(f"the census starts at d = 2, got {d}")
    f = delta.full_until
    if f[0] != -1 or f[1] != -1:
        raise ValueError(f"not canonical: full_until starts {f[0]},{f[1]}, expected -1,-1")
    if f[2] < 0:
        raise ValueError(f"not canonical: full_until on ray 2 is {f[2]}, expected >= 0")
    if sum(delta.line_until) > d - 1:
        raise ValueError(
            f"not in SI({d}): line drops sum to {sum(delta.line_until)} > {d - 1}"
        )


def normalize(delta: ShiftingIndices, d: int) -> CensusEntry | None:
    """Canonical census representative of delta, or None if not d-aCM.

    First a principal shift makes full_until = -1 on rays 0 and 1, then
    the unique twist by O(dt) brings ray 2 into the window full_until >= 0
    and sum(line_until) <= d - 1.  No such twist exists exactly when the
    fast test fails.
    """
    if d < 2:
        raise ValueError(f"the census starts at d = 2, got {d}")
    f = delta.full_until
    c0, c1 = -1 - f[0], -1 - f[1]
    shifted = delta.shifted((c0, c1, -c0 - c1))
    a = shifted.full_until[2]
    line_sum = sum(shifted.line_until)
    t_min = -(a // d)                    # ceil(-a / d)
    t_max = (d - 1 - line_sum) // d      # floor
    if t_min > t_max:
        return None
    assert t_min == t_max, f"twist window [{t_min}, {t_max}] is not a single point"
    canonical = shifted.shifted((0, 0, d * t_min))
    return CensusEntry(canonical, d, classify_type(canonical, d))


def enumerate_si(d: int) -> tuple[CensusEntry, ...]:
    """All of SI(d) in lexicographic order of the flat 6-tuple."""
    if d < 2:
        raise ValueError(f"the census starts at d = 2, got {d}")
    entries = []
    for l0 in range(0, d - 1):
        for l1 in range(0, d - 1 - l0):
            for f2 in range(0, d - 1 - l0 - l1):
                for l2 in range(f2 + 1, d - l0 - l1):
                    delta = ShiftingIndices((-1, -1, f2), (l0, l1, l2))
                    entries.append(CensusEntry(delta, d, classify_type(delta, d)))
    entries.sort(key=lambda e: e.delta.flat)
    return tuple(entries)


def count_closed(d: int) -> int:
    """Closed-form census size (d-1)d(d+1)(d+2)/24."""
    if d < 2:
        raise ValueError(f"the census starts at d = 2, got {d}")
    return (d - 1) * d * (d + 1) * (d + 2) // 24


def count_recurrence(d: int) -> int:
    """Census size via the three-type recurrence with seeds 1 and 5.

    Type I reproduces the previous census, type II contributes the
    previous census minus the one before it, and type III adds C(d, 2).
    """
    if d < 2:
        raise ValueError(f"the census starts at d = 2, got {d}")
    if d == 2:
        return 1
    prev2, prev = 1, 5
    if d == 3:
        return 5
    for k in range(4, d + 1):
        prev2, prev = prev, 2 * prev - prev2 + k * (k - 1) // 2
    return prev


def shifting_index_box(d: int) -> Iterator[ShiftingIndices]:
    """The brute-force search box: full_until in [-1, d], band width in [1, d+1]."""
    rng_full = range(-1, d + 1)
    rng_width = range(1, d + 2)

    for f0 in rng_full:
        for w0 in rng_width:
            for f1 in rng_full:
                for w1 in rng_width:
                    for f2 in rng_full:
                        for w2 in rng_width:
                            yield ShiftingIndices(
                                (f0, f1, f2), (f0 + w0, f1 + w1, f2 + w2)
                            )


def brute_force_census(d: int, test: Literal["fast", "oracle"] = "fast") -> tuple[CensusEntry, ...]:
    """Normalize every d-aCM tuple in the search box and deduplicate.

    With test="oracle" the membership decision runs through the
    cohomological route instead of the interval check; both must reproduce
    :func:`enumerate_si` exactly.
    """
    seen: dict[ShiftingIndices, CensusEntry] = {}
    for delta in shifting_index_box(d):
        if test == "oracle":
            acm = is_d_acm_oracle(rank2_bundle(delta), d)
        else:
            acm = is_d_acm_fast(delta, d)
        entry = normalize(delta, d)
        if (entry is None) == acm:
            raise RuntimeError(
                f"normalize and the {test} test disagree at {delta} for d = {d}"
            )
        if entry is not None:
            seen.setdefault(entry.delta, entry)
    return tuple(sorted(seen.values(), key=lambda e: e.delta.flat))
