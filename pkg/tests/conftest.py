import pytest

from logreg.monoid import AffineMonoid


def monoid(*gens):
    return AffineMonoid(len(gens[0]), [tuple(g) for g in gens])


@pytest.fixture
def quadric():
    return monoid((1, 0), (1, 1), (1, 2))


@pytest.fixture
def numsg23():
    return monoid((2,), (3,))


@pytest.fixture
def units_monoid():
    return monoid((1, 0), (-1, 0), (0, 1))


@pytest.fixture
def twisted_cubic():
    return monoid((1, 0), (1, 1), (1, 2), (1, 3))
