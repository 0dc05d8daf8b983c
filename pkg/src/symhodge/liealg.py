"""Lie algebras presented by their Maurer-Cartan differential.

An even-dimensional Lie algebra is given by the value of the differential d
on each degree-1 generator; d extends to all of Λ* as a derivation and
d∘d = 0 is equivalent to the Jacobi identity.  The sign convention is
dξ(X, Y) = -ξ([X, Y]), so structure constants are read off as
dξ^k = -Σ_{i<j} c_ij^k ξ^i ∧ ξ^j.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvalidAlgebra, OddDimension
from .exterior import Form, basis, indices_of, to_coordinates, wedge
from .linalg import DimensionMismatch, Matrix


class LieAlgebra:
    """A 2n-dimensional Lie algebra with named generators.

    ``d_on_generators[i]`` is the degree-2 value of d on generator i+1;
    omitted (zero) entries mean the generator is closed.
    """

    def __init__(self, dim: int, d_on_generators: Sequence[Form], generator_names: Optional[Sequence[str]] = None):
        if dim % 2 or dim <= 0:
            raise OddDimension(f"dimension must be even and positive, got {dim}")
        if len(d_on_generators) != dim:
            raise DimensionMismatch(f"need {dim} differentials, got {len(d_on_generators)}")
        for form in d_on_generators:
            if form.ambient_dim != dim or form.degree != 2:
                raise DimensionMismatch("each generator differential must be a 2-form over the algebra")
        names = list(generator_names) if generator_names is not None else [f"e{i}" for i in range(1, dim + 1)]
        if len(names) != dim:
            raise DimensionMismatch(f"need {dim} generator names, got {len(names)}")
        self.dim = dim
        self.generator_names = names
        self.d_on_generators = list(d_on_generators)
        self._d_matrices: dict[int, Matrix] = {}
        self._structure: Optional[list[list[list[Fraction]]]] = None

    def generator(self, i: int) -> Form:
        """The i-th (1-based) degree-1 generator as a Form."""
        return Form.monomial(self.dim, [i])

    def form(self, indices: Sequence[int], coef=1) -> Form:
        return Form.monomial(self.dim, indices, coef)

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, names={self.generator_names})"


def ce_differential(g: LieAlgebra, a: Form) -> Form:
    """Derivation extension of the generator differentials."""
    if a.ambient_dim != g.dim:
        raise DimensionMismatch(f"form ambient {a.ambient_dim} != algebra dim {g.dim}")
    out = Form(g.dim, a.degree + 1)
    for mask, coef in a.terms.items():
        idx = indices_of(mask)
        for j, gen in enumerate(idx):
            dgen = g.d_on_generators[gen - 1]
            if dgen.is_zero():
                continue
            rest = Form.monomial(g.dim, [x for x in idx if x != gen])
            sign = -1 if j % 2 else 1
            out = out + wedge(dgen, rest).scale(sign * coef)
    return out


@dataclass
class JacobiVerdict:
    ok: bool
    failing_generator: Optional[str] = None
    residual: Optional[Form] = None

    def __bool__(self):
        return self.ok


def validate_jacobi(g: LieAlgebra) -> JacobiVerdict:
    """Check d(d ξ) = 0 for every generator ξ; equivalent to Jacobi."""
    for i in range(1, g.dim + 1):
        residual = ce_differential(g, g.d_on_generators[i - 1])
        if not residual.is_zero():
            return JacobiVerdict(False, g.generator_names[i - 1], residual)
    return JacobiVerdict(True)


def matrix_of_d(g: LieAlgebra, k: int) -> Matrix:
    """Coordinates of d: Λ^k → Λ^{k+1} in the canonical monomial bases."""
    if k < 0 or k > g.dim:
        raise ValueError(f"degree {k} out of range")
    cached = g._d_matrices.get(k)
    if cached is not None:
        return cached
    n_rows = len(basis(g.dim, k + 1)) if k + 1 <= g.dim else 0
    columns = [
        to_coordinates(ce_differential(g, Form(g.dim, k, {mask: Fraction(1)})))
        for mask in basis(g.dim, k)
    ]
    data = [[col[i] for col in columns] for i in range(n_rows)]
    m = Matrix(data, cols=len(columns))
    g._d_matrices[k] = m
    return m


def structure_constants(g: LieAlgebra) -> list[list[list[Fraction]]]:
    """c[i][j][k] with [E_i, E_j] = Σ_k c[i][j][k] E_k (0-based indices)."""
    if g._structure is not None:
        return g._structure
    n = g.dim
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for mask, coef in g.d_on_generators[k].terms.items():
            i, j = (x - 1 for x in indices_of(mask))
            c[i][j][k] = -coef
            c[j][i][k] = coef
    g._structure = c
    return c


def bracket_vectors(g: LieAlgebra, u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """[u, v] in algebra coordinates."""
    c = structure_constants(g)
    n = g.dim
    out = [Fraction(0)] * n
    for i in range(n):
        if u[i] == 0:
            continue
        for j in range(n):
            if v[j] == 0:
                continue
            f = u[i] * v[j]
            for k in range(n):
                if c[i][j][k]:
                    out[k] += f * c[i][j][k]
    return tuple(out)


def ad_matrix(g: LieAlgebra, i: int) -> Matrix:
    """Matrix of ad_{E_i} (1-based i) acting on algebra coordinates."""
    c = structure_constants(g)
    n = g.dim
    return Matrix([[c[i - 1][j][k] for j in range(n)] for k in range(n)], cols=n)


def _bracket_subspaces(g: LieAlgebra, a_vectors, b_vectors):
    out = []
    for u in a_vectors:
        for v in b_vectors:
            w = bracket_vectors(g, u, v)
            if any(x != 0 for x in w):
                out.append(w)
    return out


def lower_central_series(g: LieAlgebra) -> list[int]:
    """Dimensions of g ⊇ [g, g] ⊇ [g, [g, g]] ⊇ ... until stabilization."""
    from .linalg import Subspace

    full = Subspace.full(g.dim)
    dims = [g.dim]
    current = full
    while True:
        nxt = Subspace(g.dim, _bracket_subspaces(g, full.basis, current.basis))
        if nxt.dim == dims[-1]:
            break
        dims.append(nxt.dim)
        current = nxt
        if nxt.dim == 0:
            break
    return dims


def derived_series(g: LieAlgebra) -> list[int]:
    """Dimensions of g ⊇ [g, g] ⊇ [[g, g], [g, g]] ⊇ ... until stabilization."""
    from .linalg import Subspace

    dims = [g.dim]
    current = Subspace.full(g.dim)
    while True:
        nxt = Subspace(g.dim, _bracket_subspaces(g, current.basis, current.basis))
        if nxt.dim == dims[-1]:
            break
        dims.append(nxt.dim)
        current = nxt
        if nxt.dim == 0:
            break
    return dims


def is_nilpotent(g: LieAlgebra) -> bool:
    return lower_central_series(g)[-1] == 0


def is_solvable(g: LieAlgebra) -> bool:
    return derived_series(g)[-1] == 0


def is_abelian(g: LieAlgebra) -> bool:
    return all(f.is_zero() for f in g.d_on_generators)


def is_unimodular(g: LieAlgebra) -> bool:
    """trace(ad_X) = 0 for every basis generator X (hence for all X)."""
    c = structure_constants(g)
    n = g.dim
    return all(sum((c[i][k][k] for k in range(n)), Fraction(0)) == 0 for i in range(n))


# --- polynomial helpers for the real-eigenvalue check -----------------------

def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_derivative(p: Sequence[Fraction]) -> list[Fraction]:
    return _poly_trim([Fraction(i) * p[i] for i in range(1, len(p))])


def poly_divmod(num: Sequence[Fraction], den: Sequence[Fraction]):
    num = list(num)
    den = _poly_trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    rem = list(num)
    while len(_poly_trim(rem)) >= len(den):
        rem = _poly_trim(rem)
        shift = len(rem) - len(den)
        factor = rem[-1] / den[-1]
        quot[shift] = factor
        for i, d in enumerate(den):
            rem[shift + i] -= factor * d
    return _poly_trim(quot), _poly_trim(rem)


def poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [x / lead for x in a]
    return a


def charpoly(m: Matrix) -> list[Fraction]:
    """Characteristic polynomial det(λI - m), coefficients low to high."""
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = m
    ident = Matrix.identity(n)
    prev = Matrix.zero(n, n)
    for k in range(1, n + 1):
        mk = m * (prev + ident.scale(coeffs[n - k + 1])) if k > 1 else m
        trace = sum((mk.data[i][i] for i in range(n)), Fraction(0))
        coeffs[n - k] = -trace / k
        prev = mk
    return _poly_trim(coeffs)


def count_real_roots(p: Sequence[Fraction]) -> int:
    """Number of distinct real roots, by a Sturm chain on the squarefree part."""
    p = _poly_trim(list(p))
    if len(p) <= 1:
        return 0
    dp = poly_derivative(p)
    g = poly_gcd(p, dp)
    if len(g) > 1:
        p, _ = poly_divmod(p, g)
    chain = [list(p), poly_derivative(p)]
    while _poly_trim(chain[-1]):
        _, r = poly_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-x for x in r])
    chain = [c for c in chain if _poly_trim(list(c))]

    def variations(at_plus_infinity: bool) -> int:
        signs = []
        for q in chain:
            lead = q[-1]
            s = 1 if lead > 0 else -1
            if not at_plus_infinity and (len(q) - 1) % 2:
                s = -s
            signs.append(s)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    return variations(False) - variations(True)


def squarefree_degree(p: Sequence[Fraction]) -> int:
    p = _poly_trim(list(p))
    if len(p) <= 1:
        return 0
    g = poly_gcd(p, poly_derivative(p))
    if len(g) > 1:
        p, _ = poly_divmod(p, g)
    return len(p) - 1


@dataclass
class SolvabilityVerdict:
    """Basis check for real ad-eigenvalues.

    Passing for every basis generator is necessary but not sufficient for the
    condition over arbitrary elements of the algebra; the flag records that
    limitation.
    """

    ok: bool
    failing_generators: list[str]
    basis_check_only: bool = True

    def __bool__(self):
        return self.ok


def completely_solvable_heuristic(g: LieAlgebra) -> SolvabilityVerdict:
    """Check, per basis generator, that ad has only real eigenvalues."""
    failures = []
    for i in range(1, g.dim + 1):
        p = charpoly(ad_matrix(g, i))
        if count_real_roots(p) != squarefree_degree(p):
            failures.append(g.generator_names[i - 1])
    return SolvabilityVerdict(not failures, failures)


def require_valid(g: LieAlgebra) -> LieAlgebra:
    verdict = validate_jacobi(g)
    if not verdict:
        raise InvalidAlgebra(
            f"d² ≠ 0 on generator {verdict.failing_generator}: residual {verdict.residual!r}"
        )
    return g
