"""Exterior algebra over a fixed 2n-dimensional space.

Monomials are subsets of {1, ..., 2n} encoded as bitmasks (bit i-1 set means
generator i is present); a monomial means the wedge of its generators in
ascending order with coefficient +1.  Forms are sparse maps from monomial to
``Fraction``.  The same representation serves multivectors over the dual
space, so ``Multivector`` is an alias of ``Form``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .linalg import DimensionMismatch, Vector

MultiIndex = int  # bitmask over generator slots 0 .. 2n-1


def mask_of(indices: Iterable[int]) -> MultiIndex:
    """Bitmask of 1-based generator indices; repeated indices are an error.

    >>> bin(mask_of([1, 3]))
    '0b101'
    """
    mask = 0
    for i in indices:
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"repeated index {i}")
        mask |= bit
    return mask


def indices_of(mask: MultiIndex) -> tuple[int, ...]:
    """Ascending 1-based generator indices of a monomial.

    >>> indices_of(0b1101)
    (1, 3, 4)
    """
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@lru_cache(maxsize=None)
def basis(ambient_dim: int, k: int) -> tuple[MultiIndex, ...]:
    """All C(2n, k) degree-k monomials in ascending bitmask order."""
    if k < 0 or k > ambient_dim:
        raise ValueError(f"degree {k} out of range for ambient {ambient_dim}")
    return tuple(m for m in range(1 << ambient_dim) if m.bit_count() == k)


@lru_cache(maxsize=None)
def _position(ambient_dim: int, k: int) -> dict[MultiIndex, int]:
    return {m: i for i, m in enumerate(basis(ambient_dim, k))}


def merge_sign(a: MultiIndex, b: MultiIndex) -> int:
    """Sign of sorting the concatenation of two disjoint ascending monomials.

    Counts the transpositions needed to interleave b's generators into a.

    >>> merge_sign(mask_of([1, 3]), mask_of([2, 4]))
    -1
    >>> merge_sign(mask_of([1, 2]), mask_of([3, 4]))
    1
    """
    sign = 1
    bb = b
    pos = 0
    while bb:
        if bb & 1:
            if (a >> (pos + 1)).bit_count() % 2:
                sign = -sign
        bb >>= 1
        pos += 1
    return sign


class Form:
    """A sparse homogeneous element of Λ^k; treat instances as immutable.

    Degrees above the ambient dimension are allowed but are necessarily zero
    (no monomials exist), which lets operators like repeated wedging by a
    2-form run off the top of the algebra without special cases.
    """

    __slots__ = ("ambient_dim", "degree", "terms")

    def __init__(self, ambient_dim: int, degree: int, terms: Optional[Mapping[MultiIndex, Fraction]] = None):
        if degree < 0:
            raise ValueError(f"negative degree {degree}")
        self.ambient_dim = ambient_dim
        self.degree = degree
        clean: dict[MultiIndex, Fraction] = {}
        for mask, coef in (terms or {}).items():
            coef = Fraction(coef)
            if coef == 0:
                continue
            if mask.bit_count() != degree:
                raise ValueError(f"monomial {indices_of(mask)} has wrong degree for Λ^{degree}")
            if mask >> ambient_dim:
                raise ValueError(f"monomial {indices_of(mask)} exceeds ambient {ambient_dim}")
            clean[mask] = coef
        self.terms = clean

    @staticmethod
    def zero(ambient_dim: int, degree: int) -> "Form":
        return Form(ambient_dim, degree)

    @staticmethod
    def monomial(ambient_dim: int, indices: Sequence[int], coef=1) -> "Form":
        mask = mask_of(indices)
        return Form(ambient_dim, len(indices), {mask: Fraction(coef)})

    @staticmethod
    def one(ambient_dim: int) -> "Form":
        return Form(ambient_dim, 0, {0: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Form)
            and self.ambient_dim == other.ambient_dim
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.degree, tuple(sorted(self.terms.items()))))

    def __add__(self, other: "Form") -> "Form":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"ambients {self.ambient_dim} != {other.ambient_dim}")
        if self.degree != other.degree:
            # the zero form belongs to every degree; anything else must match
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise DimensionMismatch(f"degrees {self.degree} != {other.degree}")
        terms = dict(self.terms)
        for mask, coef in other.terms.items():
            terms[mask] = terms.get(mask, Fraction(0)) + coef
        return Form(self.ambient_dim, self.degree, terms)

    def __sub__(self, other: "Form") -> "Form":
        return self + other.scale(-1)

    def scale(self, c) -> "Form":
        c = Fraction(c)
        return Form(self.ambient_dim, self.degree, {m: c * v for m, v in self.terms.items()})

    def __neg__(self) -> "Form":
        return self.scale(-1)

    def __mul__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def _check_compatible(self, other: "Form"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"ambients {self.ambient_dim} != {other.ambient_dim}")
        if self.degree != other.degree:
            raise DimensionMismatch(f"degrees {self.degree} != {other.degree}")

    def coefficient(self, indices: Sequence[int]) -> Fraction:
        return self.terms.get(mask_of(indices), Fraction(0))

    def sorted_terms(self) -> list[tuple[MultiIndex, Fraction]]:
        return sorted(self.terms.items())

    def __repr__(self):
        if self.is_zero():
            return f"Form(0, deg={self.degree})"
        body = " + ".join(f"{c}*e{''.join(map(str, indices_of(m)))}" for m, c in self.sorted_terms())
        return f"Form({body})"


# Multivectors (elements of Λ^k of the underlying space rather than its dual)
# share the representation; the distinction is carried by usage.
Multivector = Form


def wedge(a: Form, b: Form) -> Form:
    """Exterior product; bilinear, sign by transposition count."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambients {a.ambient_dim} != {b.ambient_dim}")
    degree = a.degree + b.degree
    terms: dict[MultiIndex, Fraction] = {}
    if degree <= a.ambient_dim:
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                if ma & mb:
                    continue
                mask = ma | mb
                coef = ca * cb * merge_sign(ma, mb)
                acc = terms.get(mask, Fraction(0)) + coef
                if acc:
                    terms[mask] = acc
                else:
                    terms.pop(mask, None)
    return Form(a.ambient_dim, degree, terms)


def wedge_power(a: Form, p: int) -> Form:
    """a ∧ a ∧ ... (p factors); p = 0 gives the constant 1."""
    out = Form.one(a.ambient_dim)
    for _ in range(p):
        out = wedge(out, a)
    return out


def contract_vector(index: int, a: Form) -> Form:
    """Contraction by the basis vector ``index`` (1-based), filling the first
    slot; an antiderivation of degree -1."""
    if a.degree == 0:
        return Form(a.ambient_dim, 0)
    bit = 1 << (index - 1)
    terms: dict[MultiIndex, Fraction] = {}
    for mask, coef in a.terms.items():
        if not (mask & bit):
            continue
        sign = -1 if (mask & (bit - 1)).bit_count() % 2 else 1
        new_mask = mask & ~bit
        acc = terms.get(new_mask, Fraction(0)) + sign * coef
        if acc:
            terms[new_mask] = acc
        else:
            terms.pop(new_mask, None)
    return Form(a.ambient_dim, a.degree - 1, terms)


def contract_multi(p: Multivector, a: Form) -> Form:
    """Contraction of ``a`` by a multivector.

    Frozen composition order: for a decomposable v1 ∧ ... ∧ vp the first
    listed vector fills the first slot, i.e. the contraction acts as
    ι_vp ∘ ... ∘ ι_v1.  This is the unique order under which the star
    operator built from it is an involution and agrees with the bilinear
    pairing definition (checked in the symplectic test suite; the reverse
    order fails both on the four-dimensional golden example).
    """
    if p.ambient_dim != a.ambient_dim:
        raise DimensionMismatch(f"ambients {p.ambient_dim} != {a.ambient_dim}")
    if p.degree > a.degree:
        return Form(a.ambient_dim, max(a.degree - p.degree, 0))
    out = Form(a.ambient_dim, a.degree - p.degree)
    for mask, coef in p.terms.items():
        piece = a
        for idx in indices_of(mask):
            piece = contract_vector(idx, piece)
        out = out + piece.scale(coef)
    return out


def to_coordinates(a: Form) -> Vector:
    """Coordinates of ``a`` with respect to ``basis(ambient, degree)``."""
    if a.degree > a.ambient_dim:
        return ()
    pos = _position(a.ambient_dim, a.degree)
    coords = [Fraction(0)] * len(pos)
    for mask, coef in a.terms.items():
        coords[pos[mask]] = coef
    return tuple(coords)


def from_coordinates(ambient_dim: int, k: int, v: Sequence) -> Form:
    """Inverse of :func:`to_coordinates`."""
    monomials = basis(ambient_dim, k)
    if len(v) != len(monomials):
        raise DimensionMismatch(f"expected {len(monomials)} coordinates, got {len(v)}")
    return Form(ambient_dim, k, {m: Fraction(c) for m, c in zip(monomials, v) if Fraction(c) != 0})


def format_form(a: Form, names: Sequence[str]) -> str:
    """Human-readable rendering such as ``a^g + 2 b^t`` in the given names."""
    if a.is_zero():
        return "0"
    out = ""
    for mask, coef in a.sorted_terms():
        mono = "^".join(names[i - 1] for i in indices_of(mask)) or "1"
        mag = abs(coef)
        body = mono if mag == 1 and mask else (f"{mag}" if not mask else f"{mag} {mono}")
        if not out:
            out = body if coef > 0 else f"-{body}"
        else:
            out += f" + {body}" if coef > 0 else f" - {body}"
    return out
