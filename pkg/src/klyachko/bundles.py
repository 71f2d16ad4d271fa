"""Equivariant vector bundles on P^n as collections of subspace filtrations.

A toric bundle of rank r is one full decreasing Z-filtration of Q^r per ray
of the fan.  A filtration is stored as steps ``(until, space)``: the value
at j is the space of the first step whose ``until`` is >= j, and zero once
j exceeds the last step.  The first step always carries the full space, so
the chain of step spaces runs strictly from Q^r down to (but excluding)
zero.

Rank-2 non-split bundles on P^2 are determined up to equivariant
isomorphism by six integers, the positions where each ray's filtration
drops from dimension 2 to 1 and from 1 to 0.  :class:`ShiftingIndices`
packages those, and :func:`rank2_bundle` realizes them with the fixed
lines span{(1,0)}, span{(0,1)}, span{(1,1)}.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .fan import Divisor, ProjectiveFan, projective_fan
from .linalg import Subspace, kron


@dataclass(frozen=True)
class Filtration:
    """A full decreasing Z-filtration of Q^r by canonical subspaces.

    ``steps`` is a tuple of ``(until, space)`` pairs with strictly
    increasing untils and strictly decreasing spaces starting at the full
    space; the zero subspace after the last step is implicit.
    """

    ambient_dim: int
    steps: tuple[tuple[int, Subspace], ...]

    def __post_init__(self):
        prev_until = None
        prev_space = None
        for until, space in self.steps:
            if space.ambient_dim != self.ambient_dim:
                raise ValueError(
                    f"step space lives in Q^{space.ambient_dim}, expected Q^{self.ambient_dim}"
                )
            if prev_until is None:
                if not space.is_full():
                    raise ValueError("the first filtration step must carry the full space")
            else:
                if until <= prev_until:
                    raise ValueError("filtration step positions must strictly increase")
                if not (space.dim < prev_space.dim and space <= prev_space):
                    raise ValueError("filtration spaces must strictly decrease")
            prev_until, prev_space = until, space
        if self.steps and self.steps[-1][1].is_zero():
            raise ValueError("the zero subspace is implicit and must not be stored")
        if not self.steps and self.ambient_dim > 0:
            raise ValueError("a filtration of a nonzero space needs at least one step")
        object.__setattr__(self, "_untils", tuple(u for u, _ in self.steps))
        spaces = tuple(s for _, s in self.steps) + (Subspace.zero(self.ambient_dim),)
        object.__setattr__(self, "_spaces", spaces)

    @classmethod
    def from_steps(cls, ambient_dim: int, steps: Iterable[tuple[int, Subspace]]) -> "Filtration":
        return cls(ambient_dim, tuple(steps))

    def at(self, j: int) -> Subspace:
        """The filtration value at index j (full for small j, zero for large)."""
        return self._spaces[self.step_index(j)]

    def step_index(self, j: int) -> int:
        """Index of j's step; ``len(steps)`` designates the implicit zero."""
        return bisect_left(self._untils, j)

    @property
    def step_spaces(self) -> tuple[Subspace, ...]:
        """Distinct filtration values in decreasing order, ending with zero."""
        return self._spaces

    @property
    def full_until(self) -> int:
        """Largest j at which the filtration is still the full space."""
        return self.steps[0][0]

    @property
    def nonzero_until(self) -> int:
        """Largest j at which the filtration is nonzero."""
        return self.steps[-1][0]

    @property
    def jumps(self) -> tuple[int, ...]:
        """All positions j where the value at j differs from the value at j+1."""
        return self._untils

    def shifted(self, offset: int) -> "Filtration":
        # invariants are shift-invariant, so skip __post_init__ revalidation;
        # twisting sits in the hot path of the census oracle
        if offset == 0:
            return self
        new = object.__new__(Filtration)
        object.__setattr__(new, "ambient_dim", self.ambient_dim)
        object.__setattr__(new, "steps", tuple((u + offset, s) for u, s in self.steps))
        object.__setattr__(new, "_untils", tuple(u + offset for u in self._untils))
        object.__setattr__(new, "_spaces", self._spaces)
        return new

    def dimension_profile(self) -> tuple[tuple[int, int], ...]:
        """(until, dim) pairs, a compact shape summary used in error messages."""
        return tuple((u, s.dim) for u, s in self.steps)


@dataclass(frozen=True)
class ShiftingIndices:
    """Drop positions of a rank-2 filtration triple on P^2.

    On ray i the filtration is the full plane for j <= full_until[i], a
    fixed line for full_until[i] < j <= line_until[i], and zero afterwards.
    The text form is ``f0,l0;f1,l1;f2,l2``, e.g. ``-1,0;-1,0;0,2``.
    """

    full_until: tuple[int, int, int]
    line_until: tuple[int, int, int]

    def __post_init__(self):
        if len(self.full_until) != 3 or len(self.line_until) != 3:
            raise ValueError("shifting indices need one pair per ray of P^2")
        for f, l in zip(self.full_until, self.line_until):
            if l <= f:
                raise ValueError(
                    f"line band must be nonempty: got full until {f}, line until {l}"
                )

    @classmethod
    def from_flat(cls, flat: Sequence[int]) -> "ShiftingIndices":
        """Build from the interleaved 6-tuple (f0, l0, f1, l1, f2, l2)."""
        if len(flat) != 6:
            raise ValueError(f"expected 6 integers, got {len(flat)}")
        f = tuple(int(x) for x in flat)
        return cls((f[0], f[2], f[4]), (f[1], f[3], f[5]))

    @classmethod
    def parse(cls, text: str) -> "ShiftingIndices":
        """Parse the text form ``f0,l0;f1,l1;f2,l2``."""
        parts = text.split(";")
        if len(parts) != 3:
            raise ValueError(f"expected three ';'-separated pairs in {text!r}")
        flat: list[int] = []
        for part in parts:
            nums = part.split(",")
            if len(nums) != 2:
                raise ValueError(f"expected two ','-separated integers in {part!r}")
            try:
                flat.extend(int(x) for x in nums)
            except ValueError:
                raise ValueError(f"non-integer shifting index in {part!r}") from None
        return cls.from_flat(flat)

    @property
    def flat(self) -> tuple[int, int, int, int, int, int]:
        f, l = self.full_until, self.line_until
        return (f[0], l[0], f[1], l[1], f[2], l[2])

    @property
    def band_widths(self) -> tuple[int, int, int]:
        """Lengths of the three line bands (line_until - full_until)."""
        return tuple(l - f for f, l in zip(self.full_until, self.line_until))

    def shifted(self, offsets: Sequence[int]) -> "ShiftingIndices":
        """Shift ray i by offsets[i]; this is how divisor twists act."""
        if len(offsets) != 3:
            raise ValueError("need one offset per ray")
        return ShiftingIndices(
            tuple(f + c for f, c in zip(self.full_until, offsets)),
            tuple(l + c for l, c in zip(self.line_until, offsets)),
        )

    def __str__(self) -> str:
        return ";".join(f"{f},{l}" for f, l in zip(self.full_until, self.line_until))


@dataclass(frozen=True)
class ToricBundle:
    """One filtration per ray of the fan of P^n, over a common Q^r."""

    fan: ProjectiveFan
    filtrations: tuple[Filtration, ...]

    def __post_init__(self):
        if len(self.filtrations) != self.fan.nrays:
            raise ValueError(
                f"need {self.fan.nrays} filtrations for {self.fan}, got {len(self.filtrations)}"
            )
        dims = {f.ambient_dim for f in self.filtrations}
        if len(dims) > 1:
            raise ValueError(f"filtrations disagree on the ambient dimension: {sorted(dims)}")

    @property
    def rank(self) -> int:
        return self.filtrations[0].ambient_dim

    def filtration(self, ray_index: int) -> Filtration:
        return self.filtrations[ray_index]

    def at(self, ray_index: int, j: int) -> Subspace:
        return self.filtrations[ray_index].at(j)

    def twist(self, divisor: Sequence[int]) -> "ToricBundle":
        """Tensor with the line bundle of the divisor: shift ray i by its coefficient."""
        divisor = self.fan.check_divisor(divisor)
        return ToricBundle(
            self.fan,
            tuple(f.shifted(c) for f, c in zip(self.filtrations, divisor)),
        )

    def twist_by_degree(self, t: int) -> "ToricBundle":
        """Twist by O(t), realized as t times the last boundary divisor."""
        return self.twist(self.fan.hyperplane_twist(t))

    def direct_sum(self, other: "ToricBundle") -> "ToricBundle":
        """Blockwise direct sum: the filtration value at j is the sum of values."""
        if self.fan != other.fan:
            raise ValueError(f"fan mismatch: {self.fan} vs {other.fan}")
        r1, r2 = self.rank, other.rank
        filts = []
        for f1, f2 in zip(self.filtrations, other.filtrations):
            filts.append(_merge_filtrations(f1, f2, r1 + r2, _embedded_sum))
        return ToricBundle(self.fan, tuple(filts))

    def tensor(self, other: "ToricBundle") -> "ToricBundle":
        """Tensor product; value at j is the sum over s+t=j of tensor factors."""
        if self.fan != other.fan:
            raise ValueError(f"fan mismatch: {self.fan} vs {other.fan}")
        filts = []
        for f1, f2 in zip(self.filtrations, other.filtrations):
            filts.append(_tensor_filtration(f1, f2))
        return ToricBundle(self.fan, tuple(filts))

    def dual(self) -> "ToricBundle":
        """Dual bundle: the value at j is the complement of the value at 1-j.

        This index convention is pinned by the Serre duality test
        h^2(E(t)) = h^0(dual(E)(-t-3)) on P^2.
        """
        r = self.rank
        filts = []
        for f in self.filtrations:
            spaces = f.step_spaces
            steps = [
                (-f.jumps[t], spaces[t + 1].complement())
                for t in range(len(f.steps) - 1, -1, -1)
            ]
            filts.append(Filtration(r, tuple(steps)))
        return ToricBundle(self.fan, tuple(filts))

    def is_split(self) -> bool:
        """Whether the bundle is a direct sum of line bundles.

        True exactly when all subspaces across all ray filtrations are
        simultaneously coordinate subspaces of one basis, which is detected
        by the multigraded dimension count of :func:`family_is_coordinatized`.
        For rank 2 this amounts to at most two distinct lines occurring.
        """
        return family_is_coordinatized(self.filtrations)

    def is_locally_free(self) -> bool:
        """Check the adapted-basis condition on every maximal cone.

        Always true on P^2: any two filtrations admit a common adapted
        basis, and reflexive sheaves on a smooth surface are locally free.
        """
        return all(
            family_is_coordinatized([self.filtrations[i] for i in cone])
            for cone in self.fan.maximal_cones()
        )

    def shifting_indices(self) -> ShiftingIndices:
        """Extract the six drop positions of a non-split rank-2 bundle on P^2."""
        if self.fan.dim != 2:
            raise ValueError("shifting indices are defined on P^2 only")
        if self.rank != 2:
            raise ValueError(f"shifting indices need rank 2, got rank {self.rank}")
        if self.is_split():
            raise ValueError("split bundle has no canonical shifting indices")
        full_until = []
        line_until = []
        for i, f in enumerate(self.filtrations):
            if len(f.steps) != 2:
                raise ValueError(
                    f"ray {i} has dimension profile {f.dimension_profile()}, "
                    "expected drops 2 -> 1 -> 0"
                )
            full_until.append(f.steps[0][0])
            line_until.append(f.steps[1][0])
        return ShiftingIndices(tuple(full_until), tuple(line_until))

    def is_slope_stable(self) -> bool:
        """Slope stability of a non-split rank-2 bundle on P^2.

        Equivalent to the strict triangle inequality among the three band
        widths; the boundary case (1,1,2) is strictly semistable, which is
        why the inequality is strict.
        """
        alpha = self.shifting_indices().band_widths
        total = sum(alpha)
        return all(2 * a < total for a in alpha)


def _embedded_sum(a: Subspace, b: Subspace, total: int) -> Subspace:
    r1 = a.ambient_dim
    gens = [row + (Fraction(0),) * (total - r1) for row in a.basis]
    gens += [(Fraction(0),) * r1 + row for row in b.basis]
    return Subspace(gens, total)


def _merge_filtrations(f1: Filtration, f2: Filtration, total: int, combine) -> Filtration:
    jumps = sorted(set(f1.jumps) | set(f2.jumps))
    steps = []
    prev = None
    for u in jumps:
        space = combine(f1.at(u), f2.at(u), total)
        if prev is None or space != prev:
            steps.append((u, space))
            prev = space
        else:
            # same value as before: extend the previous step
            steps[-1] = (u, prev)
    steps = [(u, s) for u, s in steps if not s.is_zero()]
    return Filtration(total, tuple(steps))


def _tensor_filtration(f1: Filtration, f2: Filtration) -> Filtration:
    r1, r2 = f1.ambient_dim, f2.ambient_dim
    total = r1 * r2
    lo = f1.full_until + f2.full_until
    hi = f1.nonzero_until + f2.nonzero_until

    def value(j: int) -> Subspace:
        if j <= lo:
            return Subspace.full(total)
        acc = Subspace.zero(total)
        # terms outside this window have a zero factor
        for s in range(j - f2.nonzero_until, f1.nonzero_until + 1):
            acc = acc + kron(f1.at(s), f2.at(j - s))
        return acc

    steps = []
    prev = None
    for j in range(lo, hi + 1):
        space = value(j)
        if space.is_zero():
            break
        if prev is None or space != prev:
            steps.append([j, space])
            prev = space
        else:
            steps[-1][0] = j
    return Filtration(total, tuple((u, s) for u, s in steps))


def family_is_coordinatized(filtrations: Sequence[Filtration]) -> bool:
    """Whether a family of filtrations admits one common adapted basis.

    Counts the total dimension of the multigraded pieces
    I(k) / sum_i I(k + e_i) with I(k) the intersection of the filtration
    values at k, over all tuples k of jump positions.  The count equals the
    ambient dimension exactly when a single basis realizes every subspace
    in the family as a coordinate subspace.
    """
    if not filtrations:
        return True
    r = filtrations[0].ambient_dim
    total = 0
    for k in product(*(f.jumps for f in filtrations)):
        inter = Subspace.full(r)
        for f, kj in zip(filtrations, k):
            inter = inter & f.at(kj)
            if inter.is_zero():
                break
        if inter.is_zero():
            continue
        below = Subspace.zero(r)
        for idx in range(len(filtrations)):
            term = Subspace.full(r)
            for j, (f, kj) in enumerate(zip(filtrations, k)):
                term = term & f.at(kj + 1 if j == idx else kj)
                if term.is_zero():
                    break
            below = below + term
        total += inter.dim - below.dim
        if total > r:
            return False
    return total == r


def line_bundle(divisor: Sequence[int], n: int | None = None) -> ToricBundle:
    """The line bundle of a T-invariant divisor: rank 1, one drop per ray."""
    if n is None:
        n = len(divisor) - 1
    fan = projective_fan(n)
    divisor = fan.check_divisor(divisor)
    one = Subspace.full(1)
    return ToricBundle(fan, tuple(Filtration(1, ((c, one),)) for c in divisor))


def structure_sheaf(n: int = 2) -> ToricBundle:
    return line_bundle((0,) * (n + 1), n)


def tangent_bundle(n: int = 2) -> ToricBundle:
    """Tangent bundle of P^n: full for j <= 0, span of the ray vector at j = 1."""
    fan = projective_fan(n)
    full = Subspace.full(n)
    filts = []
    for u in fan.rays:
        ray_line = Subspace([[Fraction(x) for x in u]], n)
        filts.append(Filtration(n, ((0, full), (1, ray_line))))
    return ToricBundle(fan, tuple(filts))


# Fixed lines realizing any valid shifting indices; any three distinct
# lines give an equivariantly isomorphic bundle.  Shared instances keep
# subspace equality an identity check in census-scale scans.
_RANK2_LINES = tuple(Subspace([line], 2) for line in ((1, 0), (0, 1), (1, 1)))


def _trusted_filtration(ambient_dim: int, steps: tuple[tuple[int, Subspace], ...]) -> Filtration:
    # construction-time validation skipped: callers guarantee the invariants
    new = object.__new__(Filtration)
    object.__setattr__(new, "ambient_dim", ambient_dim)
    object.__setattr__(new, "steps", steps)
    object.__setattr__(new, "_untils", tuple(u for u, _ in steps))
    object.__setattr__(
        new, "_spaces", tuple(s for _, s in steps) + (Subspace.zero(ambient_dim),)
    )
    return new


def rank2_bundle(delta: ShiftingIndices) -> ToricBundle:
    """Non-split rank-2 bundle on P^2 with the given shifting indices."""
    fan = projective_fan(2)
    full = Subspace.full(2)
    filts = tuple(
        _trusted_filtration(2, ((f, full), (l, w)))
        for f, l, w in zip(delta.full_until, delta.line_until, _RANK2_LINES)
    )
    return ToricBundle(fan, filts)
