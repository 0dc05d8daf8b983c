from fractions import Fraction

import pytest

from conftest import kt_algebra, solv6_algebra
from symhodge.errors import InvalidAlgebra, OddDimension
from symhodge.exterior import Form
from symhodge.liealg import (
    LieAlgebra,
    ad_matrix,
    ce_differential,
    charpoly,
    completely_solvable_heuristic,
    count_real_roots,
    derived_series,
    is_abelian,
    is_nilpotent,
    is_solvable,
    is_unimodular,
    lower_central_series,
    matrix_of_d,
    require_valid,
    structure_constants,
    validate_jacobi,
)
from symhodge.linalg import Matrix


def abelian(dim):
    return LieAlgebra(dim, [Form(dim, 2)] * dim)


def test_construction_rejects_odd_dimension():
    with pytest.raises(OddDimension):
        LieAlgebra(3, [Form(3, 2)] * 3)


def test_ce_differential_kt_anchors():
    g = kt_algebra()
    tau = Form.monomial(4, [4])
    assert ce_differential(g, tau) == Form.monomial(4, [1, 2])
    # d(-g^t) = a^b^g
    assert ce_differential(g, Form.monomial(4, [3, 4], -1)) == Form.monomial(4, [1, 2, 3])


def test_ce_differential_solv6_anchor():
    g = solv6_algebra()
    got = ce_differential(g, Form.monomial(6, [3]))
    assert got == Form.monomial(6, [1, 3], -1) + Form.monomial(6, [2, 5], -1)


def test_validate_jacobi():
    assert validate_jacobi(abelian(4)).ok
    assert validate_jacobi(kt_algebra()).ok
    # d e3 = e1^e2 and d e4 = e1^e3 gives d(d e4) = -e1^e1^e2 = 0: valid;
    # flip to d e4 = e3^e4 to break the identity instead
    bad = LieAlgebra(4, [Form(4, 2), Form(4, 2),
                        Form.monomial(4, [1, 2]), Form.monomial(4, [3, 4])])
    verdict = validate_jacobi(bad)
    assert not verdict.ok
    assert verdict.failing_generator == "e4"
    assert not verdict.residual.is_zero()
    with pytest.raises(InvalidAlgebra):
        require_valid(bad)


def test_filtered_but_invalid_candidate_is_caught():
    # filtered differentials can still break d^2 = 0 once chained:
    # d e5 = e3^e4 with d e4 = e1^e2 gives d(d e5) = -e3^e1^e2 != 0
    zero = Form(6, 2)
    g = LieAlgebra(6, [zero, zero, zero, Form.monomial(6, [1, 2]),
                      Form.monomial(6, [3, 4]), zero])
    verdict = validate_jacobi(g)
    assert not verdict.ok
    assert verdict.failing_generator == "e5"
    assert verdict.residual == ce_differential(g, g.d_on_generators[4])
    assert not verdict.residual.is_zero()


def test_matrix_of_d_shapes_and_ranks():
    g = kt_algebra()
    top = matrix_of_d(g, 4)
    assert top.shape == (0, 1)
    for k in range(5):
        assert matrix_of_d(abelian(4), k).is_zero()
    assert matrix_of_d(g, 1).rank() == 1


def test_d_squared_zero_as_matrices():
    for g in (kt_algebra(), solv6_algebra()):
        for k in range(g.dim - 1):
            assert (matrix_of_d(g, k + 1) * matrix_of_d(g, k)).is_zero()


def test_betti_zero_and_one():
    from symhodge.cohomology import Cohomology
    from symhodge.symplectic import build

    g = kt_algebra()
    omega = Form.monomial(4, [1, 3]) + Form.monomial(4, [2, 4])
    coh = Cohomology(build(g, omega))
    assert coh.betti(0) == 1
    assert coh.betti(1) == g.dim - matrix_of_d(g, 1).rank()


def test_series_and_classes():
    assert lower_central_series(abelian(4)) == [4, 0]
    assert is_nilpotent(kt_algebra())
    assert is_abelian(abelian(6)) and not is_abelian(kt_algebra())
    s6 = solv6_algebra()
    assert not is_nilpotent(s6)
    assert is_solvable(s6)
    assert lower_central_series(s6)[-1] > 0
    assert derived_series(s6)[-1] == 0


def test_unimodularity():
    assert is_unimodular(kt_algebra())
    assert is_unimodular(solv6_algebra())
    # affine 2-dimensional algebra: d e2 = e1^e2 means ad has a trace
    aff = LieAlgebra(2, [Form(2, 2), Form.monomial(2, [1, 2])])
    assert not is_unimodular(aff)


def test_structure_constants_match_bracket_convention():
    g = kt_algebra()
    c = structure_constants(g)
    # d t = a^b  <=>  [X, Y] = -T in the dual basis
    assert c[0][1][3] == -1
    assert c[1][0][3] == 1
    ad1 = ad_matrix(g, 1)
    assert ad1.column(1) == (0, 0, 0, -1)


def test_charpoly_and_real_root_count():
    m = Matrix([[0, -1], [1, 0]])  # rotation: x^2 + 1, no real roots
    assert charpoly(m) == [Fraction(1), Fraction(0), Fraction(1)]
    assert count_real_roots(charpoly(m)) == 0
    m2 = Matrix([[2, 0], [0, 3]])
    assert count_real_roots(charpoly(m2)) == 2
    nil = Matrix([[0, 1], [0, 0]])  # x^2: one distinct real root
    assert count_real_roots(charpoly(nil)) == 1


def test_completely_solvable_heuristic():
    assert completely_solvable_heuristic(kt_algebra()).ok
    verdict = completely_solvable_heuristic(solv6_algebra())
    assert verdict.ok and verdict.basis_check_only
    rotation = LieAlgebra(4, [Form(4, 2), Form(4, 2),
                              Form.monomial(4, [1, 4]),
                              Form.monomial(4, [1, 3], -1)])
    assert validate_jacobi(rotation).ok
    verdict = completely_solvable_heuristic(rotation)
    assert not verdict.ok
    assert verdict.failing_generators == ["e1"]


def test_solv6_ad_eigenvalues_are_zero_and_plus_minus_one():
    g = solv6_algebra()
    p = charpoly(ad_matrix(g, 1))
    # factors as x^2 (x-1)^2 (x+1)^2
    from symhodge.liealg import poly_divmod
    quotient, remainder = poly_divmod(p, [Fraction(0), Fraction(0), Fraction(1)])
    assert not remainder
    quotient2, remainder2 = poly_divmod(quotient, [Fraction(-1), Fraction(0), Fraction(1)])
    assert not remainder2
    assert quotient2 == [Fraction(-1), Fraction(0), Fraction(1)]
