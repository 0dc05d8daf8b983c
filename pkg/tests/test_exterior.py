import random
from fractions import Fraction

import pytest

from _oracles import permutation_sign
from symhodge.exterior import (
    Form,
    basis,
    contract_multi,
    contract_vector,
    format_form,
    from_coordinates,
    indices_of,
    mask_of,
    to_coordinates,
    wedge,
    wedge_power,
)
from symhodge.linalg import DimensionMismatch
from symhodge.randgen import random_form


def test_wedge_unit_monomials():
    e1, e2 = Form.monomial(4, [1]), Form.monomial(4, [2])
    assert wedge(e1, e2) == Form.monomial(4, [1, 2])
    assert wedge(e2, e1) == Form.monomial(4, [1, 2], -1)
    assert wedge(e1, e1).is_zero()


def test_wedge_omega_squared_sign_vs_permutation_oracle():
    # omega = a^g + b^t on the four-dimensional nilpotent example
    omega = Form.monomial(4, [1, 3]) + Form.monomial(4, [2, 4])
    square = wedge(omega, omega)
    expected = Fraction(permutation_sign([1, 3, 2, 4]) + permutation_sign([2, 4, 1, 3]))
    assert square == Form.monomial(4, [1, 2, 3, 4], expected)
    assert expected == -2


def test_wedge_beyond_top_degree_is_zero():
    omega = Form.monomial(4, [1, 3]) + Form.monomial(4, [2, 4])
    assert wedge_power(omega, 3).is_zero()


def test_contract_vector_anchors():
    e12 = Form.monomial(4, [1, 2])
    assert contract_vector(1, e12) == Form.monomial(4, [2])
    assert contract_vector(2, e12) == Form.monomial(4, [1], -1)
    assert contract_vector(3, e12).is_zero()


def test_contract_by_scalar_is_identity():
    rng = random.Random(3)
    one = Form.one(4)
    for k in range(5):
        f = random_form(4, k, rng)
        assert contract_multi(one, f) == f


def test_contract_multi_full_contraction_sign():
    # with the frozen order the first listed vector fills the first slot,
    # so a monomial contracted with itself evaluates to +1
    e12 = Form.monomial(4, [1, 2])
    assert contract_multi(e12, e12) == Form.one(4)


def test_basis_enumeration():
    assert basis(4, 0) == (0,)
    assert basis(4, 1) == (1, 2, 4, 8)
    assert len(basis(6, 3)) == 20
    assert list(basis(6, 3)) == sorted(basis(6, 3))
    with pytest.raises(ValueError):
        basis(4, 5)


def test_coordinates_roundtrip():
    rng = random.Random(17)
    assert to_coordinates(Form(4, 2)) == (0,) * 6
    ab = Form.monomial(4, [1, 2])
    coords = to_coordinates(ab)
    assert coords == (1, 0, 0, 0, 0, 0)
    assert from_coordinates(4, 2, coords) == ab
    for _ in range(100):
        dim = rng.choice([4, 6])
        k = rng.randint(0, dim)
        f = random_form(dim, k, rng)
        assert from_coordinates(dim, k, to_coordinates(f)) == f


def test_wedge_graded_commutative_and_associative():
    rng = random.Random(23)
    for _ in range(25):
        dim = rng.choice([4, 6])
        ka, kb, kc = (rng.randint(0, dim) for _ in range(3))
        a, b, c = (random_form(dim, k, rng) for k in (ka, kb, kc))
        assert wedge(a, b) == wedge(b, a).scale((-1) ** (ka * kb))
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


def test_contraction_is_antiderivation():
    rng = random.Random(29)
    for _ in range(25):
        dim = rng.choice([4, 6])
        ka, kb = rng.randint(1, dim), rng.randint(1, dim)
        a, b = random_form(dim, ka, rng), random_form(dim, kb, rng)
        x = rng.randint(1, dim)
        lhs = contract_vector(x, wedge(a, b))
        rhs = wedge(contract_vector(x, a), b) + wedge(a, contract_vector(x, b)).scale((-1) ** ka)
        assert lhs == rhs or (lhs.is_zero() and rhs.is_zero())


def test_contract_multi_equals_frozen_composition():
    rng = random.Random(31)
    for _ in range(20):
        dim = 6
        p_indices = sorted(rng.sample(range(1, dim + 1), rng.randint(1, 3)))
        a = random_form(dim, rng.randint(len(p_indices), dim), rng)
        direct = contract_multi(Form.monomial(dim, p_indices), a)
        composed = a
        for i in p_indices:
            composed = contract_vector(i, composed)
        assert direct == composed or (direct.is_zero() and composed.is_zero())


def test_mask_helpers():
    assert mask_of([1, 3]) == 0b101
    assert indices_of(0b1101) == (1, 3, 4)
    with pytest.raises(ValueError):
        mask_of([2, 2])


def test_form_validation():
    with pytest.raises(ValueError):
        Form(4, 2, {mask_of([1]): Fraction(1)})
    with pytest.raises(ValueError):
        Form(4, 1, {mask_of([5]): Fraction(1)})
    with pytest.raises(DimensionMismatch):
        wedge(Form.monomial(4, [1]), Form.monomial(6, [1]))


def test_format_form():
    names = ["a", "b", "g", "t"]
    f = Form.monomial(4, [1, 3]) + Form.monomial(4, [2, 4], Fraction(-1, 2))
    assert format_form(f, names) == "a^g - 1/2 b^t"
    assert format_form(Form(4, 2), names) == "0"
    assert format_form(Form.monomial(4, [2], -1), names) == "-b"
    assert format_form(Form.one(4).scale(3), names) == "3"
