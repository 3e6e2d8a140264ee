from fractions import Fraction as F

import pytest

from aodesolve.poly import BiPoly


def make_ex1():
    """y'^2 - y^3 - y^2."""
    return BiPoly({(0, 2): F(1), (3, 0): F(-1), (2, 0): F(-1)})


def make_ex2():
    """((y'-1)^2 + y^2)^3 - 4 (y'-1)^2 y^2."""
    w = BiPoly({(0, 1): F(1), (0, 0): F(-1)})
    ysq = BiPoly({(2, 0): F(1)})
    return (w * w + ysq) ** 3 - BiPoly({(0, 0): F(4)}) * (w * w) * ysq


def make_ex3(m):
    """(y'-1)^2 - y^(2m+1)."""
    return BiPoly({(0, 2): F(1), (0, 1): F(-2), (0, 0): F(1),
                   (2 * m + 1, 0): F(-1)})


@pytest.fixture
def ex1():
    return make_ex1()


@pytest.fixture
def ex2():
    return make_ex2()
