"""Exact rational linear algebra for subspaces of Q^n.

Everything is computed over ``fractions.Fraction``; there is no floating
point anywhere.  A :class:`Subspace` stores the reduced row echelon basis
of its span, so two subspaces are equal exactly when their canonical bases
agree entry for entry.  That makes equality, hashing and deduplication
byte-level operations, which the enumeration machinery depends on.

Subspaces are immutable.  ``A & B`` is the intersection, ``A + B`` the sum,
``A <= B`` inclusion and ``v in A`` membership.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]

_F0 = Fraction(0)
_F1 = Fraction(1)


def _to_vector(row: Sequence, ambient_dim: int) -> Vector:
    if len(row) != ambient_dim:
        raise ValueError(
            f"generator has length {len(row)}, expected ambient dimension {ambient_dim}"
        )
    return tuple(x if isinstance(x, Fraction) else Fraction(x) for x in row)


def rref(rows: Iterable[Sequence], ambient_dim: int) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    """Reduced row echelon form of the given rows.

    Returns ``(basis, pivots)`` where ``basis`` contains the nonzero rows
    with pivots normalized to 1 and cleared above and below, and ``pivots``
    their pivot columns in increasing order.
    """
    work = [list(_to_vector(r, ambient_dim)) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ambient_dim):
        piv = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = _F1 / work[r][c]
        if inv != 1:
            work[r] = [x * inv for x in work[r]]
        row_r = work[r]
        for i in range(len(work)):
            f = work[i][c]
            if i != r and f != 0:
                work[i] = [a - f * b for a, b in zip(work[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def matrix_rank(rows: Iterable[Sequence], ambient_dim: int) -> int:
    """Rank of a matrix given as an iterable of rows of length ambient_dim."""
    return len(rref(rows, ambient_dim)[0])


class Subspace:
    """A linear subspace of Q^n in canonical (RREF) form.

    Instances are immutable and hashable; the hash is precomputed because
    cohomology computations key caches on component subspaces.
    """

    __slots__ = ("ambient_dim", "basis", "pivots", "_hash")

    ambient_dim: int
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...]

    def __init__(self, generators: Iterable[Sequence], ambient_dim: int):
        basis, pivots = rref(generators, ambient_dim)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", pivots)
        object.__setattr__(self, "_hash", hash((ambient_dim, basis)))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def span(cls, generators: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        """Canonical subspace spanned by the generators (idempotent)."""
        return cls(generators, ambient_dim)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return _zero_subspace(ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return _full_subspace(ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} != {other.ambient_dim}"
            )

    def __add__(self, other: "Subspace") -> "Subspace":
        """Smallest subspace containing both summands."""
        self._check_ambient(other)
        if self.is_full() or other.is_zero():
            return self
        if other.is_full() or self.is_zero():
            return other
        return Subspace(self.basis + other.basis, self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        """Intersection, via the double orthogonal complement."""
        self._check_ambient(other)
        if self.is_full() or other.is_zero():
            return other
        if other.is_full() or self.is_zero():
            return self
        return (self.complement() + other.complement()).complement()

    def complement(self) -> "Subspace":
        """Orthogonal complement under the standard dot product.

        Over Q the form is positive definite, so dim drops complementarily
        and the double complement returns the original subspace.
        """
        n = self.ambient_dim
        free = [c for c in range(n) if c not in self.pivots]
        gens = []
        for fc in free:
            v = [_F0] * n
            v[fc] = _F1
            for i, p in enumerate(self.pivots):
                v[p] = -self.basis[i][fc]
            gens.append(v)
        return Subspace(gens, n)

    def __contains__(self, vector: Sequence) -> bool:
        v = list(_to_vector(vector, self.ambient_dim))
        for i, p in enumerate(self.pivots):
            f = v[p]
            if f != 0:
                row = self.basis[i]
                v = [a - f * b for a, b in zip(v, row)]
        return not any(v)

    def __le__(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(row in other for row in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self <= other

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return self._hash

    def coords(self, vector: Sequence) -> Vector:
        """Coordinates of a member vector in the canonical basis.

        For an RREF basis these are just the entries at the pivot columns.
        The vector must lie in the subspace; this is not re-checked here.
        """
        v = _to_vector(vector, self.ambient_dim)
        return tuple(v[p] for p in self.pivots)

    def __repr__(self) -> str:
        rows = ", ".join("(" + ", ".join(str(x) for x in row) + ")" for row in self.basis)
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim}: [{rows}])"


@lru_cache(maxsize=None)
def _zero_subspace(ambient_dim: int) -> Subspace:
    return Subspace((), ambient_dim)


@lru_cache(maxsize=None)
def _full_subspace(ambient_dim: int) -> Subspace:
    eye = [[_F1 if i == j else _F0 for j in range(ambient_dim)] for i in range(ambient_dim)]
    return Subspace(eye, ambient_dim)


def kron(a: Subspace, b: Subspace) -> Subspace:
    """Tensor product a (x) b inside Q^(dim_a * dim_b), row-major basis order."""
    n = a.ambient_dim * b.ambient_dim
    gens = []
    for u in a.basis:
        for v in b.basis:
            gens.append([x * y for x in u for y in v])
    return Subspace(gens, n)
