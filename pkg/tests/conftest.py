import mpmath
import pytest
from gmpy2 import mpq


def to_mp(x):
    """Exact conversion of an mpfr/mpq/int into an mpmath number."""
    q = mpq(x)
    return mpmath.mpf(int(q.numerator)) / int(q.denominator)


def log2_abs(x):
    x = abs(x)
    return float("-inf") if x == 0 else float(mpmath.log(x, 2))


@pytest.fixture
def hiprec():
    with mpmath.workprec(600):
        yield
