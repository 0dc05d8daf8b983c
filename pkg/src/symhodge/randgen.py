"""Seeded random instances for the property suites.

Random algebras use a strictly filtered differential (d e_j lands in the
wedge square of the earlier generators), which forces nilpotency, hence
unimodularity and Poincaré duality — exactly the hypotheses under which the
cross-validation assertions apply.  Candidates not satisfying d² = 0 are
rejected and redrawn, so every returned algebra is valid.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .exterior import Form, basis, from_coordinates, mask_of, wedge_power
from .liealg import LieAlgebra, matrix_of_d, validate_jacobi
from .linalg import kernel
from .symplectic import SymplecticStructure, build


def random_nilpotent_algebra(dim: int, rng: random.Random,
                             abelian_probability: float = 0.15,
                             max_attempts: int = 500) -> LieAlgebra:
    """A random nilpotent Lie algebra of the given even dimension."""
    if rng.random() < abelian_probability:
        return LieAlgebra(dim, [Form(dim, 2)] * dim)
    for _ in range(max_attempts):
        d_gens = []
        for j in range(1, dim + 1):
            terms = {}
            for a in range(1, j):
                for b in range(a + 1, j):
                    if rng.random() < 0.35:
                        terms[mask_of([a, b])] = Fraction(rng.choice([-2, -1, 1, 1, 2]))
            d_gens.append(Form(dim, 2, terms))
        g = LieAlgebra(dim, d_gens)
        if validate_jacobi(g).ok:
            return g
    return LieAlgebra(dim, [Form(dim, 2)] * dim)


def random_symplectic_form(g: LieAlgebra, rng: random.Random,
                           max_attempts: int = 200) -> Optional[Form]:
    """A random closed nondegenerate 2-form on ``g``, or None if not found."""
    closed = kernel(matrix_of_d(g, 2))
    n = g.dim // 2
    for _ in range(max_attempts):
        v = [Fraction(0)] * closed.ambient_dim
        for row in closed.basis:
            c = rng.randint(-3, 3)
            if c:
                v = [x + c * y for x, y in zip(v, row)]
        omega = from_coordinates(g.dim, 2, v)
        if not wedge_power(omega, n).is_zero():
            return omega
    return None


def random_symplectic_instance(dim: int, rng: random.Random,
                               abelian_probability: float = 0.15,
                               max_algebras: int = 50) -> SymplecticStructure:
    """A random nilpotent Lie algebra together with a symplectic form on it."""
    for _ in range(max_algebras):
        g = random_nilpotent_algebra(dim, rng, abelian_probability)
        omega = random_symplectic_form(g, rng)
        if omega is not None:
            return build(g, omega)
    raise RuntimeError(f"no symplectic nilpotent instance found in dim {dim}")


def random_form(dim: int, k: int, rng: random.Random, density: float = 0.5,
                bound: int = 3) -> Form:
    """A sparse random k-form with small integer coefficients."""
    terms = {}
    for mask in basis(dim, k):
        if rng.random() < density:
            c = rng.randint(-bound, bound)
            if c:
                terms[mask] = Fraction(c)
    return Form(dim, k, terms)
