"""Precision plumbing for extended-precision reals.

Every multiprecision value in this package is an mpmath ``mpf``.  Precision
is always explicit: operations that produce values take a bit count and run
under :func:`working_precision`, so nothing depends on mpmath's ambient
global state.  Decimal rendering goes through :func:`to_decimal`, which
rounds to nearest and is deterministic for a given mantissa, making report
bytes reproducible.
"""

from __future__ import annotations

import mpmath
from mpmath import mp, mpf

from .errors import DomainError

DEFAULT_PRECISION = 192  # bits
GUARD_BITS = 32
MIN_PRECISION = 64
DEFAULT_DIGITS = 20


def check_precision(precision: int, maximum: int | None = None) -> int:
    """Validate a precision request in bits."""
    precision = int(precision)
    if precision < MIN_PRECISION:
        raise DomainError(f"precision must be >= {MIN_PRECISION} bits, got {precision}")
    if maximum is not None and precision > maximum:
        from .errors import CapacityError

        raise CapacityError(f"precision {precision} exceeds supported maximum {maximum} bits")
    return precision


def working_precision(precision: int, guard: int = GUARD_BITS):
    """Context manager running mpmath at ``precision + guard`` bits."""
    return mp.workprec(int(precision) + int(guard))


def to_decimal(x, digits: int = DEFAULT_DIGITS) -> str:
    """Render ``x`` as a decimal string with ``digits`` significant digits.

    Round-to-nearest; trailing zeros are kept so that field widths, and
    therefore report bytes, do not depend on the value.  An mpf input is
    rendered from its own mantissa, never re-rounded at ambient precision.
    """
    if not isinstance(x, mpmath.mpf):
        with mp.workprec(max(mp.prec, int(digits * 3.33) + 32)):
            x = mpf(x)
    return mpmath.nstr(x, int(digits), strip_zeros=False)


def from_decimal(s: str, precision: int = DEFAULT_PRECISION):
    """Parse a decimal string at the given precision."""
    with working_precision(precision):
        return mpf(s)


def agreement_bits(a, b) -> float:
    """Bits of agreement between two numbers: -log2 of the relative gap.

    Returns ``inf`` for exact equality.  Used by tests that assert
    "agree to >= precision - g bits".
    """
    with mp.workprec(mp.prec + 16):
        a, b = mpf(a), mpf(b)
        diff = abs(a - b)
        if diff == 0:
            return float("inf")
        scale = max(abs(a), abs(b), mpf(1) if a == b == 0 else mpf(0))
        if scale == 0:
            return float("inf")
        return float(-mpmath.log(diff / scale, 2))
