import pytest

from talex.algebra import INTEGERS, LaurentPolynomial
from talex.knots import bundled_table


@pytest.fixture(scope="session")
def table():
    return bundled_table()


@pytest.fixture(scope="session")
def trefoil(table):
    return table["3_1"]


@pytest.fixture(scope="session")
def figure_eight(table):
    return table["4_1"]


def poly(coeffs, min_exp=0, domain=INTEGERS):
    """Ascending coefficient list starting at t^min_exp."""
    return LaurentPolynomial.make(domain, min_exp, coeffs)
