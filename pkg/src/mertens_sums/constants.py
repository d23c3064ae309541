"""Extended-precision evaluation of the constants the main term consumes.

Covers Euler's constant, integer zeta values, the Mertens constant

    c1 = gamma - sum_p { log(1/(1-1/p)) - 1/p }  ~ 0.261497,

the series value g(1) = sum_{m>=2} P(m)/m (so that c1 = gamma - g(1)),
and the derivatives a_m = (1/Gamma)^(m)(1), generated from

    1/Gamma(1+z) = exp( gamma z + sum_{j>=2} (-1)^(j+1) zeta(j) z^j / j ).

gamma and pi enter as embedded decimal literals; the test suite recomputes
both from scratch (Euler-Maclaurin for gamma, a Machin arctan series for
pi) and requires at least 100 digits of agreement, so every embedded digit
stays auditable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp, mpf

from .bigreal import DEFAULT_PRECISION, GUARD_BITS, check_precision, working_precision
from .errors import CapacityError, DomainError, PrecisionNotMetError

# Highest precision servable from the embedded literals (335 digits ~ 1112 bits).
MAX_CONSTANT_PRECISION = 1024
# Series evaluations may run guard bits above the public ceiling.
MAX_SERIES_PRECISION = MAX_CONSTANT_PRECISION + 2 * GUARD_BITS

_GAMMA_LITERAL = (
    "0.57721566490153286060651209008240243104215933593992359880576723488486"
    "7726777664670936947063291746749514631447249807082480960504014486542836"
    "2241739976449235362535003337429373377376739427925952582470949160087352"
    "0394816567085323315177661152862119950150798479374508570574002992135478"
    "614669402960432542151905877553526733139925401296742051375"
)

_PI_LITERAL = (
    "3.14159265358979323846264338327950288419716939937510582097494459230781"
    "6406286208998628034825342117067982148086513282306647093844609550582231"
    "7253594081284811174502841027019385211055596446229489549303819644288109"
    "7566593344612847564823378678316527120190914564856692346034861045432664"
    "821339360726024914127372458700660631558817488152092096282"
)


def euler_gamma(precision: int = DEFAULT_PRECISION):
    """Euler's constant at the requested bit precision (from the literal)."""
    check_precision(precision, MAX_CONSTANT_PRECISION)
    with working_precision(precision):
        return mpf(_GAMMA_LITERAL)


def pi_value(precision: int = DEFAULT_PRECISION):
    """pi at the requested bit precision (from the literal)."""
    check_precision(precision, MAX_CONSTANT_PRECISION)
    with working_precision(precision):
        return mpf(_PI_LITERAL)


# ----------------------------------------------------------------------
# Independent oracles for the embedded literals.  These are slower and
# exist so that tests can re-derive gamma and pi without trusting any
# library constant or the literals themselves.

def euler_gamma_euler_maclaurin(precision: int = DEFAULT_PRECISION, n: int = 10000):
    """gamma via Euler-Maclaurin applied to H_n - log n.

        gamma = H_n - log n - 1/(2n) + sum_{i>=1} B_{2i} / (2i n^{2i})

    The Bernoulli correction terms decrease until around i ~ pi*n, far
    beyond any truncation used here, so the first omitted term bounds the
    remainder.
    """
    check_precision(precision, MAX_CONSTANT_PRECISION)
    with working_precision(precision):
        h = mpf(0)
        for i in range(n, 0, -1):  # ascending magnitudes: sum small terms first
            h += mpf(1) / i
        val = h - mp.log(n) - mpf(1) / (2 * n)
        eps = mpf(2) ** (-(precision + 16))
        n2 = mpf(n) ** 2
        pw = n2
        for i in range(1, 400):
            b = _bernoulli(2 * i)
            term = mpf(b.numerator) / (b.denominator * 2 * i * pw)
            val += term
            if abs(term) < eps:
                break
            pw *= n2
        else:
            raise PrecisionNotMetError(
                "Euler-Maclaurin tail did not reach the error budget; increase n",
                achieved_bound=abs(term),
            )
        return +val


def pi_machin(precision: int = DEFAULT_PRECISION):
    """pi from Machin's identity pi/4 = 4 arctan(1/5) - arctan(1/239).

    The arctan series are alternating, so each truncation error is below
    the first omitted term.
    """
    check_precision(precision, MAX_CONSTANT_PRECISION)
    with working_precision(precision):
        def arctan_inv(q: int):
            # arctan(1/q) = sum_{k>=0} (-1)^k / ((2k+1) q^(2k+1))
            eps = mpf(2) ** (-(precision + 16))
            q2 = q * q
            term = mpf(1) / q
            total = mpf(0)
            k = 0
            while abs(term) > eps:
                total += term if k % 2 == 0 else -term
                term = term / q2 * (2 * k + 1) / (2 * k + 3)
                k += 1
            return total

        return +(16 * arctan_inv(5) - 4 * arctan_inv(239))


@lru_cache(maxsize=None)
def _bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n as an exact fraction (Akiyama-Tanigawa)."""
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


# ----------------------------------------------------------------------
# Zeta values.

def _zeta_em(s, precision: int):
    """zeta(s) for real s > 1 by direct summation plus Euler-Maclaurin tail.

    N is chosen from the error budget; correction terms are added until
    they fall below it, and the first omitted term bounds the remainder.
    """
    with working_precision(precision):
        s = mpf(s)
        budget_bits = precision + 24
        # Direct tail alone decays like N^(1-s); Euler-Maclaurin corrections
        # decay like (2 pi N)^(-2i), so N ~ budget/2 suffices for every s.
        n_direct = max(8, min(budget_bits // 2 + 8, int(mpf(2) ** (budget_bits / (s - 1)) + 2)))
        total = mpf(0)
        for n in range(n_direct, 0, -1):
            total += mpf(n) ** (-s)
        total += mpf(n_direct) ** (1 - s) / (s - 1)
        total -= mpf(n_direct) ** (-s) / 2
        rising = mpf(s)  # (s)(s+1)...(s+2i-2), starts with one factor
        npow = mpf(n_direct) ** (-s - 1)
        fact = mpf(2)  # (2i)!
        eps = mpf(2) ** (-budget_bits)
        for i in range(1, 300):
            b = _bernoulli(2 * i)
            term = mpf(b.numerator) / b.denominator / fact * rising * npow
            total += term
            if abs(term) < eps:
                return +total
            rising *= (s + 2 * i - 1) * (s + 2 * i)
            npow /= n_direct * n_direct
            fact *= (2 * i + 1) * (2 * i + 2)
        raise PrecisionNotMetError(
            f"zeta({s}) Euler-Maclaurin tail stalled above the error budget",
            achieved_bound=abs(term),
        )


@lru_cache(maxsize=4096)
def _zeta_int_cached(k: int, prec_bucket: int):
    return _zeta_em(k, prec_bucket)


def zeta_int(k: int, precision: int = DEFAULT_PRECISION):
    """zeta(k) for integer k >= 2."""
    if not isinstance(k, int) or k < 2:
        raise DomainError(f"zeta_int requires an integer k >= 2, got {k!r}")
    check_precision(precision, MAX_SERIES_PRECISION)
    with working_precision(precision):
        return +_zeta_int_cached(k, int(precision))


def zeta_real(s, precision: int = DEFAULT_PRECISION):
    """zeta(s) for real s > 1 (same Euler-Maclaurin engine as zeta_int)."""
    check_precision(precision, MAX_SERIES_PRECISION)
    if not mpf(s) > 1:
        raise DomainError(f"zeta_real requires s > 1, got {s!r}")
    with working_precision(precision):
        return +_zeta_em(s, int(precision))


# ----------------------------------------------------------------------
# The Mertens constant and its series form.

def g_at_1(precision: int = DEFAULT_PRECISION):
    """g(1) = sum_{m>=2} P(m)/m over the prime zeta function P.

    Terms are added until P(m)/m drops below the error budget; since
    P(m) < 2^(1-m) the discarded tail is geometrically bounded.
    """
    check_precision(precision, MAX_CONSTANT_PRECISION)
    from .primes import prime_zeta  # deferred: primes imports this module

    with working_precision(precision):
        eps = mpf(2) ** (-(precision + 16))
        total = mpf(0)
        m = 2
        while True:
            term = prime_zeta(m, precision=precision + GUARD_BITS) / m
            total += term
            # tail bound: sum_{j>m} 2^(1-j)/j < 2^(1-m)/m
            if mpf(2) ** (1 - m) / m < eps:
                break
            m += 1
            if m > 8 * precision:
                raise PrecisionNotMetError("g(1) series stalled", achieved_bound=term)
        return +total


def mertens_c1_direct_bound(limit: int):
    """Certified absolute bound for the direct method at a given sieve limit.

    The dropped prime tail is below sum_{n>limit} n^(-2) < 1/limit; a factor
    2 absorbs arithmetic rounding with a wide margin.
    """
    return mpf(2) / limit


def mertens_c1(
    precision: int = DEFAULT_PRECISION,
    method: str = "accelerated",
    primes=None,
    abs_tol=None,
):
    """The Mertens constant c1 = gamma - sum_p { log(1/(1-1/p)) - 1/p }.

    ``accelerated`` evaluates gamma - g(1) and reaches the full requested
    precision.  ``direct`` sums the defining prime series over the supplied
    table (limit >= 10^6 required) and is certified only to
    :func:`mertens_c1_direct_bound`; it exists as an independent
    cross-check.  When the certified bound exceeds ``abs_tol`` (default:
    2^-precision), the direct method raises ``PrecisionNotMetError``
    carrying the bound it did achieve.
    """
    check_precision(precision, MAX_CONSTANT_PRECISION)
    if method == "accelerated":
        with working_precision(precision):
            return +(euler_gamma(precision) - g_at_1(precision))
    if method != "direct":
        raise DomainError(f"unknown method {method!r}; expected 'direct' or 'accelerated'")

    if primes is None:
        from .primes import sieve

        primes = sieve(10**6)
    return _mertens_c1_direct(precision, primes, abs_tol)


def _mertens_c1_direct(precision: int, primes, abs_tol):
    from .errors import ParameterError

    if primes.limit < 10**6:
        raise ParameterError(
            f"direct method needs a prime table with limit >= 10^6, got {primes.limit}"
        )
    certified = mertens_c1_direct_bound(primes.limit)
    if abs_tol is None:
        abs_tol = mpf(2) ** (-precision)
    if certified > abs_tol:
        raise PrecisionNotMetError(
            f"direct method at limit {primes.limit} certifies only {float(certified):.3e}",
            achieved_bound=certified,
        )
    with working_precision(precision):
        total = mpf(0)
        one = mpf(1)
        # sum_p { log(1/(1-1/p)) - 1/p }, ascending primes
        for p in primes.primes.tolist():
            invp = one / p
            total += -mp.log(one - invp) - invp
        return +(euler_gamma(precision) - total)


def h0_value(precision: int = DEFAULT_PRECISION):
    """h(0) = c1 - gamma, the constant shift in the log-singularity
    expansion of the prime zeta function; equals -g(1)."""
    with working_precision(precision):
        return +(mertens_c1(precision) - euler_gamma(precision))


# ----------------------------------------------------------------------
# Derivatives of the reciprocal gamma function at 1.

MAX_DERIV_ORDER = 64


def recip_gamma_derivs(m_max: int, precision: int = DEFAULT_PRECISION):
    """a_m = (1/Gamma)^(m)(1) for m = 0..m_max.

    Exponentiates the log series L(z) = gamma z + sum_{j>=2} (-1)^(j+1)
    zeta(j) z^j / j with the standard power-series recursion

        e_0 = 1,   e_n = (1/n) * sum_{1<=j<=n} j l_j e_{n-j},

    and returns a_m = m! e_m.  Coefficient extraction at order m only
    involves l_1..l_m, so the truncation is exact; the only error is
    arithmetic rounding at the working precision.
    """
    if not isinstance(m_max, int) or m_max < 0:
        raise DomainError(f"m_max must be a nonnegative integer, got {m_max!r}")
    if m_max > MAX_DERIV_ORDER:
        raise CapacityError(
            f"m_max={m_max} exceeds the supported derivative order {MAX_DERIV_ORDER}"
        )
    check_precision(precision, MAX_CONSTANT_PRECISION)
    with working_precision(precision, guard=GUARD_BITS + 16):
        ell = [mpf(0)] * (m_max + 1)
        if m_max >= 1:
            ell[1] = euler_gamma(precision)
        for j in range(2, m_max + 1):
            zj = zeta_int(j, precision)
            ell[j] = zj / j if j % 2 == 1 else -zj / j
        e = [mpf(1)] + [mpf(0)] * m_max
        for n in range(1, m_max + 1):
            acc = mpf(0)
            for j in range(1, n + 1):
                if ell[j]:
                    acc += j * ell[j] * e[n - j]
            e[n] = acc / n
        fact = 1
        out = []
        for m in range(m_max + 1):
            if m > 0:
                fact *= m
            out.append(+(e[m] * fact))
        return out


def recip_gamma(z, precision: int = DEFAULT_PRECISION, m_max: int = MAX_DERIV_ORDER):
    """1/Gamma(1+z) through the Taylor series sum a_m z^m / m!.

    Accurate for |z| <= 4 with the default series length; beyond that the
    truncated tail is no longer negligible and a DomainError is raised.
    """
    with working_precision(precision):
        z = mpf(z)
        if abs(z) > 4:
            raise DomainError(f"series evaluation of 1/Gamma(1+z) supports |z| <= 4, got {z}")
        a = recip_gamma_derivs(m_max, precision)
        total = mpf(0)
        zpow = mpf(1)
        fact = mpf(1)
        for m, am in enumerate(a):
            if m > 0:
                zpow *= z
                fact *= m
            total += am * zpow / fact
        return +total


# ----------------------------------------------------------------------
# Bundle.

@dataclass(frozen=True)
class ConstantsBundle:
    """All constants the asymptotic machinery consumes, at one precision.

    ``zeta`` maps k -> zeta(k) for 2 <= k <= zeta_max; ``recip_gamma_derivs``
    holds a_0..a_m_max.  Identities a_0 = 1, a_1 = gamma and h0 = c1 - gamma
    are enforced at construction.
    """

    precision: int
    gamma: object
    zeta: dict
    c1: object
    h0: object
    recip_gamma_derivs: list

    @classmethod
    def build(cls, precision: int = DEFAULT_PRECISION, m_max: int = 40):
        check_precision(precision, MAX_CONSTANT_PRECISION)
        with working_precision(precision):
            gamma = euler_gamma(precision)
            zmax = max(m_max, 10)
            zmap = {k: zeta_int(k, precision) for k in range(2, zmax + 1)}
            c1 = mertens_c1(precision, "accelerated")
            h0 = +(c1 - gamma)
            derivs = recip_gamma_derivs(m_max, precision)
            tol = mpf(2) ** (-(precision - 8))
            if h0 != c1 - gamma:
                raise AssertionError("h0 identity violated at construction")
            if derivs[0] != 1:
                raise AssertionError("a_0 must equal 1")
            if m_max >= 1 and abs(derivs[1] - gamma) > tol * max(1, abs(gamma)):
                raise AssertionError("a_1 must equal gamma to working precision")
        return cls(
            precision=int(precision),
            gamma=gamma,
            zeta=zmap,
            c1=c1,
            h0=h0,
            recip_gamma_derivs=derivs,
        )

    @property
    def m_max(self) -> int:
        return len(self.recip_gamma_derivs) - 1

    def pi(self):
        return pi_value(self.precision)


def h0(bundle: ConstantsBundle):
    """h(0) = c1 - gamma from a constructed bundle."""
    return bundle.h0
