import pytest
from mpmath import mp, mpf

from mertens_sums.constants import ConstantsBundle
from mertens_sums.primes import sieve


@pytest.fixture(scope="session")
def primes_1e4():
    return sieve(10**4)


@pytest.fixture(scope="session")
def primes_1e6():
    return sieve(10**6)


@pytest.fixture(scope="session")
def bundle192():
    # m_max 42 so the reciprocal-gamma consistency check at M=40 can see a_41
    return ConstantsBundle.build(192, m_max=42)


@pytest.fixture(scope="session")
def bundle224():
    return ConstantsBundle.build(224, m_max=12)


def assert_close_digits(actual, expected, digits, label=""):
    """|actual - expected| < 10^-digits * max(1, |expected|)."""
    with mp.workprec(max(mp.prec, int(digits * 3.33) + 64)):
        a, e = mpf(actual), mpf(expected)
        tol = mpf(10) ** (-digits) * max(1, abs(e))
        assert abs(a - e) < tol, (
            f"{label or 'value'}: |{mp.nstr(a, digits + 5)} - {mp.nstr(e, digits + 5)}| "
            f"= {mp.nstr(abs(a - e), 5)} >= {mp.nstr(tol, 3)}"
        )
