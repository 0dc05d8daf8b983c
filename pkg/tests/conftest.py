import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from symhodge import analysis
from symhodge.exterior import Form
from symhodge.liealg import LieAlgebra
from symhodge.randgen import random_symplectic_instance
from symhodge.symplectic import build


def kt_algebra() -> LieAlgebra:
    zero = Form(4, 2)
    return LieAlgebra(4, [zero, zero, zero, Form.monomial(4, [1, 2])], ["a", "b", "g", "t"])


def kt_omega() -> Form:
    return Form.monomial(4, [1, 3]) + Form.monomial(4, [2, 4])


def solv6_algebra() -> LieAlgebra:
    zero = Form(6, 2)
    dg1 = Form.monomial(6, [1, 3], -1) + Form.monomial(6, [2, 5], -1)
    dg2 = Form.monomial(6, [1, 4]) + Form.monomial(6, [2, 6], -1)
    dt1 = Form.monomial(6, [1, 5], -1)
    dt2 = Form.monomial(6, [1, 6])
    return LieAlgebra(6, [zero, zero, dg1, dg2, dt1, dt2],
                      ["a", "b", "g1", "g2", "t1", "t2"])


def solv6_omega() -> Form:
    return Form.monomial(6, [1, 2]) + Form.monomial(6, [3, 6]) + Form.monomial(6, [4, 5])


def torus_structure(dim: int):
    g = LieAlgebra(dim, [Form(dim, 2)] * dim)
    omega = Form(dim, 2)
    for i in range(1, dim // 2 + 1):
        omega = omega + Form.monomial(dim, [2 * i - 1, 2 * i])
    return build(g, omega)


@pytest.fixture(scope="session")
def kt():
    return build(kt_algebra(), kt_omega())


@pytest.fixture(scope="session")
def solv6():
    return build(solv6_algebra(), solv6_omega())


@pytest.fixture(scope="session")
def torus4():
    return torus_structure(4)


@pytest.fixture(scope="session")
def torus6():
    return torus_structure(6)


@pytest.fixture(scope="session")
def kt_doc():
    return analysis.load_corpus("kodaira_thurston.lie")


@pytest.fixture(scope="session")
def solv6_doc():
    return analysis.load_corpus("solv6.lie")


@pytest.fixture(scope="session")
def random_pool(kt, solv6, torus4, torus6):
    """Named fixed instances plus >= 50 seeded random nilpotent ones."""
    instances = [("kt", kt), ("solv6", solv6), ("torus4", torus4), ("torus6", torus6)]
    rng4 = random.Random(20240)
    rng6 = random.Random(20246)
    for i in range(30):
        instances.append((f"rand4-{i}", random_symplectic_instance(4, rng4)))
    for i in range(24):
        instances.append((f"rand6-{i}", random_symplectic_instance(6, rng6)))
    return instances
