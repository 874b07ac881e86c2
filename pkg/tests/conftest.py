import pytest

from semidual.artinian import algebra_from_ideal
from semidual.monomial import MonomialIdeal, PolyContext


def ideal(names, *gens):
    ctx = PolyContext(tuple(names)) if not isinstance(names, PolyContext) else names
    return MonomialIdeal(ctx, tuple(gens))


def algebra(names, gens, p):
    return algebra_from_ideal(ideal(names, *gens), p)


@pytest.fixture(scope="session")
def m2_f3():
    return algebra("xy", [(2, 0), (1, 1), (0, 2)], 3)


@pytest.fixture(scope="session")
def m2_f2():
    return algebra("xy", [(2, 0), (1, 1), (0, 2)], 2)


@pytest.fixture(scope="session")
def x4_f2():
    return algebra("x", [(4,)], 2)


@pytest.fixture(scope="session")
def tensor9():
    return algebra("abcd", [(2, 0, 0, 0), (1, 1, 0, 0), (0, 2, 0, 0),
                            (0, 0, 2, 0), (0, 0, 1, 1), (0, 0, 0, 2)], 2)
