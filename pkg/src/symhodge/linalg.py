"""Exact linear algebra over the rationals.

Every cohomological quantity downstream (Betti numbers, harmonic dimensions,
witness forms) reduces to row reduction of matrices with ``Fraction``
entries.  There are no tolerances anywhere: two subspaces are equal exactly
when their canonical (reduced row echelon) bases are identical.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

# Exact scalar used throughout the package.  ``fractions.Fraction`` already
# guarantees the contract we need: lowest terms, positive denominator,
# arbitrary precision, no rounding ever.
Rational = Fraction

Vector = tuple[Fraction, ...]


class DimensionMismatch(ValueError):
    """Operands live in incompatible spaces."""


class InclusionError(ValueError):
    """quotient_dim was called on spaces that are not nested."""


def vector(entries: Iterable) -> Vector:
    """Normalize an iterable of numbers into a tuple of Fractions."""
    return tuple(Fraction(x) for x in entries)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths {len(u)} != {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_scale(c, v: Sequence[Fraction]) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in v)


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


class Matrix:
    """Dense rational matrix, fixed shape, treated as immutable."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable], cols: Optional[int] = None):
        rows = [tuple(Fraction(x) for x in row) for row in data]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise DimensionMismatch("ragged rows")
            if cols is not None and cols != width:
                raise DimensionMismatch(f"declared cols {cols} != row width {width}")
            self.cols = width
        else:
            if cols is None:
                raise DimensionMismatch("empty matrix needs an explicit column count")
            self.cols = cols
        self.rows = len(rows)
        self.data = tuple(rows)

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[Fraction(i == j) for j in range(n)] for i in range(n)], cols=n)

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix([[0] * cols for _ in range(rows)], cols=cols)

    def row(self, i: int) -> Vector:
        return self.data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def transpose(self) -> "Matrix":
        return Matrix([self.column(j) for j in range(self.cols)], cols=self.rows)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"matrix cols {self.cols} != vector length {len(v)}")
        return tuple(
            sum((a * b for a, b in zip(row, v) if a and b), Fraction(0))
            for row in self.data
        )

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        # operator matrices here are sparse; accumulate scaled rows of the
        # right factor instead of forming dense dot products
        zero = Fraction(0)
        out = []
        for row in self.data:
            acc = [zero] * other.cols
            for j, x in enumerate(row):
                if x:
                    orow = other.data[j]
                    acc = [a + x * y if y else a for a, y in zip(acc, orow)]
            out.append(acc)
        return Matrix(out, cols=other.cols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix(
            [vec_add(r, s) for r, s in zip(self.data, other.data)], cols=self.cols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def scale(self, c) -> "Matrix":
        c = Fraction(c)
        return Matrix([[c * x for x in row] for row in self.data], cols=self.cols)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def rank(self) -> int:
        return len(_rref_rows(list(self.data), self.cols)[0])

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionMismatch("determinant needs a square matrix")
        rows = [list(r) for r in self.data]
        n = self.rows
        out = Fraction(1)
        for c in range(n):
            pivot_row = next((i for i in range(c, n) if rows[i][c] != 0), None)
            if pivot_row is None:
                return Fraction(0)
            if pivot_row != c:
                rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
                out = -out
            out *= rows[c][c]
            inv = 1 / rows[c][c]
            for i in range(c + 1, n):
                if rows[i][c] != 0:
                    f = rows[i][c] * inv
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
        return out

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise DimensionMismatch("only square matrices invert")
        n = self.rows
        aug = [list(row) + [Fraction(i == j) for j in range(n)] for i, row in enumerate(self.data)]
        reduced, pivots = _rref_rows(aug, 2 * n)
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix([row[n:] for row in reduced], cols=n)

    def __repr__(self):
        return f"Matrix({[list(map(str, r)) for r in self.data]})"


def _rref_rows(rows: list, width: int) -> tuple[list, list[int]]:
    """Gauss-Jordan reduction; returns (nonzero reduced rows, pivot columns)."""
    rows = [list(map(Fraction, r)) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(width):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv if x else x for x in rows[r]]
        pivot = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], pivot)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[: len(pivots)]], pivots


def rref(m: Matrix) -> Matrix:
    """The unique reduced row echelon form of ``m`` (zero rows kept)."""
    reduced, _ = _rref_rows(list(m.data), m.cols)
    padded = list(reduced) + [tuple(zero_vector(m.cols))] * (m.rows - len(reduced))
    return Matrix(padded, cols=m.cols)


class Subspace:
    """A linear subspace in canonical form: RREF basis, one vector per row.

    Two subspaces are equal exactly when their bases are identical tuples;
    this makes identities such as ``Im d ∩ ker δ = Im dδ`` directly testable.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        rows = [tuple(Fraction(x) for x in v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector length {len(v)} != ambient {ambient_dim}")
        reduced, pivots = _rref_rows(rows, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis = tuple(reduced)
        self.pivots = tuple(pivots)

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim)

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix.identity(ambient_dim).data)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        """Residue of ``v`` after eliminating this subspace's pivots."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector length {len(v)} != ambient {self.ambient_dim}")
        v = list(map(Fraction, v))
        for row, p in zip(self.basis, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [x - f * y if y else x for x, y in zip(v, row)]
        return tuple(v)


def kernel(m: Matrix) -> Subspace:
    """Subspace of the domain annihilated by ``m``."""
    reduced, pivots = _rref_rows(list(m.data), m.cols)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    vectors = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        vectors.append(v)
    return Subspace(m.cols, vectors)


def image(m: Matrix) -> Subspace:
    """Column space of ``m`` as a subspace of the codomain."""
    return Subspace(m.rows, [m.column(j) for j in range(m.cols)])


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Largest subspace contained in both operands."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambients {a.ambient_dim} != {b.ambient_dim}")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    # lambda . basis(a) = mu . basis(b)  <=>  (lambda, mu) in ker [A^T | -B^T]
    columns = [list(v) for v in a.basis] + [[-x for x in v] for v in b.basis]
    system = Matrix([list(row) for row in zip(*columns)], cols=a.dim + b.dim)
    vectors = []
    for coeffs in kernel(system).basis:
        v = [Fraction(0)] * a.ambient_dim
        for c, row in zip(coeffs[: a.dim], a.basis):
            if c != 0:
                v = [x + c * y for x, y in zip(v, row)]
        vectors.append(v)
    return Subspace(a.ambient_dim, vectors)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    """Row space of the stacked bases."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambients {a.ambient_dim} != {b.ambient_dim}")
    return Subspace(a.ambient_dim, list(a.basis) + list(b.basis))


def contains(a: Subspace, v: Sequence[Fraction]) -> bool:
    """Is ``v`` in the span of ``a``?"""
    return is_zero_vector(a.reduce(v))


def is_subspace(small: Subspace, big: Subspace) -> bool:
    return all(contains(big, v) for v in small.basis)


def quotient_dim(big: Subspace, small: Subspace) -> int:
    """dim(big) - dim(small), demanding small ⊆ big."""
    if not is_subspace(small, big):
        raise InclusionError("quotient_dim: small is not contained in big")
    return big.dim - small.dim


def solve(m: Matrix, target: Sequence[Fraction]) -> Optional[Vector]:
    """A particular solution of ``m x = target`` (free variables zero), or None.

    The pivot-variable solution is deterministic, which keeps printed
    witnesses reproducible.
    """
    if len(target) != m.rows:
        raise DimensionMismatch(f"target length {len(target)} != rows {m.rows}")
    aug = [list(row) + [Fraction(t)] for row, t in zip(m.data, target)]
    if m.rows == 0:
        return zero_vector(m.cols)
    reduced, pivots = _rref_rows(aug, m.cols + 1)
    if m.cols in pivots:
        return None  # inconsistent system
    x = [Fraction(0)] * m.cols
    for row, p in zip(reduced, pivots):
        x[p] = row[m.cols]
    return tuple(x)


def complement(big: Subspace, small: Subspace) -> list[Vector]:
    """Canonical complement of ``small`` inside ``big``.

    The rows of RREF(big) whose pivots are not pivots of small already have
    zeros on every pivot column of small (pivots of a subspace are pivots of
    any superspace), so they form a canonical direct complement.
    """
    if not is_subspace(small, big):
        raise InclusionError("complement: small is not contained in big")
    small_pivots = set(small.pivots)
    return [row for row, p in zip(big.basis, big.pivots) if p not in small_pivots]


class Quotient:
    """Canonical coordinates on big/small.

    Class representatives are the canonical complement rows; coordinates of a
    vector are read off after reducing modulo ``small``.
    """

    __slots__ = ("big", "small", "reps", "rep_pivots")

    def __init__(self, big: Subspace, small: Subspace):
        self.big = big
        self.small = small
        self.reps = complement(big, small)
        small_pivots = set(small.pivots)
        self.rep_pivots = [p for p in big.pivots if p not in small_pivots]

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, v: Sequence[Fraction]) -> Vector:
        """Class coordinates of ``v`` (which must lie in ``big``)."""
        residue = self.small.reduce(v)
        out = tuple(residue[p] for p in self.rep_pivots)
        check = list(residue)
        for c, rep in zip(out, self.reps):
            if c != 0:
                check = [x - c * y for x, y in zip(check, rep)]
        if not is_zero_vector(check):
            raise DimensionMismatch("vector does not lie in the numerator subspace")
        return out

    def lift(self, coords: Sequence[Fraction]) -> Vector:
        """Canonical representative of the class with the given coordinates."""
        if len(coords) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coordinates")
        v = [Fraction(0)] * self.big.ambient_dim
        for c, rep in zip(coords, self.reps):
            if c != 0:
                v = [x + Fraction(c) * y for x, y in zip(v, rep)]
        return tuple(v)
