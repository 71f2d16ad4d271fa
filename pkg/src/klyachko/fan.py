"""The fan of projective n-space and its combinatorics.

Rays are the standard basis vectors of Z^n together with minus their sum,
so the pairing of a character m with ray i is just ``m[i]`` for i < n and
``-sum(m)`` for the last ray.  Cones of dimension k are all k-element
subsets of the rays, stored as ascending tuples of ray indices.

Characters are plain integer tuples of length n; torus-invariant divisors
are integer tuples of length n + 1, one coefficient per ray.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import NamedTuple, Sequence

Character = tuple[int, ...]
Divisor = tuple[int, ...]
Cone = tuple[int, ...]


class SignedFace(NamedTuple):
    """A facet of a cone together with its sign in the boundary operator."""

    face: Cone
    sign: int


class ProjectiveFan:
    """The complete fan of P^n.

    The orientation convention is fixed once and for all: cones carry their
    ray indices in ascending order, and omitting the ray at position i
    (0-based) contributes the sign (-1)^i.  Any consistent choice gives the
    same homology dimensions; this one is deterministic across runs.
    """

    __slots__ = ("dim", "rays")

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"projective space dimension must be positive, got {n}")
        self.dim = n
        rays = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
        rays.append(tuple(-1 for _ in range(n)))
        self.rays = tuple(rays)

    @property
    def nrays(self) -> int:
        return self.dim + 1

    def pairing(self, m: Sequence[int], ray_index: int) -> int:
        """The pairing <m, u_i> of a character with the i-th primitive vector."""
        if not 0 <= ray_index < self.nrays:
            raise IndexError(f"ray index {ray_index} out of range for P^{self.dim}")
        if len(m) != self.dim:
            raise ValueError(f"character has length {len(m)}, expected {self.dim}")
        if ray_index < self.dim:
            return int(m[ray_index])
        return -sum(int(x) for x in m)

    def pairings(self, m: Sequence[int]) -> tuple[int, ...]:
        """All n+1 pairings of m at once; the entries always sum to zero."""
        if len(m) != self.dim:
            raise ValueError(f"character has length {len(m)}, expected {self.dim}")
        head = tuple(int(x) for x in m)
        return head + (-sum(head),)

    def cones(self, k: int) -> tuple[Cone, ...]:
        """All k-dimensional cones in lexicographic order; cones(0) = ((),)."""
        if not 0 <= k <= self.dim:
            raise ValueError(f"cone dimension {k} out of range for P^{self.dim}")
        return _cones(self.nrays, k)

    def maximal_cones(self) -> tuple[Cone, ...]:
        return self.cones(self.dim)

    def boundary(self, cone: Sequence[int]) -> tuple[SignedFace, ...]:
        """Signed facets of a cone: omit position i with sign (-1)^i."""
        cone = tuple(cone)
        if not cone:
            raise ValueError("the zero cone has no boundary")
        if list(cone) != sorted(set(cone)):
            raise ValueError(f"cone must be an ascending tuple of distinct rays, got {cone}")
        return tuple(
            SignedFace(cone[:i] + cone[i + 1:], 1 if i % 2 == 0 else -1)
            for i in range(len(cone))
        )

    def divisor_degree(self, divisor: Sequence[int]) -> int:
        """Degree of a T-invariant divisor: each boundary divisor has degree 1."""
        self.check_divisor(divisor)
        return sum(int(x) for x in divisor)

    def check_divisor(self, divisor: Sequence[int]) -> Divisor:
        if len(divisor) != self.nrays:
            raise ValueError(
                f"divisor needs {self.nrays} coefficients for P^{self.dim}, got {len(divisor)}"
            )
        return tuple(int(x) for x in divisor)

    def hyperplane_twist(self, t: int) -> Divisor:
        """The divisor t * D_last, the fixed representative of O(t)."""
        return (0,) * self.dim + (t,)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjectiveFan) and self.dim == other.dim

    def __hash__(self) -> int:
        return hash(("ProjectiveFan", self.dim))

    def __repr__(self) -> str:
        return f"ProjectiveFan(P^{self.dim})"


@lru_cache(maxsize=None)
def _cones(nrays: int, k: int) -> tuple[Cone, ...]:
    return tuple(combinations(range(nrays), k))


@lru_cache(maxsize=None)
def projective_fan(n: int) -> ProjectiveFan:
    """Shared fan instance for P^n."""
    return ProjectiveFan(n)


P2 = projective_fan(2)
