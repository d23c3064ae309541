"""Generalized Mertens prime sums.

Exact computation of S_k(x), the sum of 1/(p_1 ... p_k) over ordered
prime k-tuples with product <= x, together with the degree-k main-term
polynomials P_k built from first-principles constants, and numerical
Hankel-contour checks of the identities behind them.
"""

__version__ = "0.1.0"

from .asymptotics import (
    CoefficientTable,
    Polynomial,
    evaluate_main_term,
    im_closed_form,
    lambda_coeffs,
    pk_polynomial,
)
from .bigreal import DEFAULT_PRECISION, to_decimal
from .constants import (
    ConstantsBundle,
    euler_gamma,
    g_at_1,
    h0,
    mertens_c1,
    pi_value,
    recip_gamma_derivs,
    zeta_int,
)
from .errors import (
    CapacityError,
    ConvergenceError,
    DomainError,
    MertensError,
    ParameterError,
    PrecisionNotMetError,
)
from .hankel import HankelContour, QuadResult, hankel_power_quad, im_quad
from .harness import (
    GridSpec,
    VerificationRow,
    emit_report,
    parse_report,
    summary_stats,
    verify_grid,
)
from .primes import PrimeTable, mobius, prime_zeta, sieve
from .sums import KeySpace, MertensSumResult, prime_recip_table, sk_direct, sk_fast

__all__ = [
    "CapacityError",
    "CoefficientTable",
    "ConstantsBundle",
    "ConvergenceError",
    "DEFAULT_PRECISION",
    "DomainError",
    "GridSpec",
    "HankelContour",
    "KeySpace",
    "MertensError",
    "MertensSumResult",
    "ParameterError",
    "Polynomial",
    "PrecisionNotMetError",
    "PrimeTable",
    "QuadResult",
    "VerificationRow",
    "emit_report",
    "euler_gamma",
    "evaluate_main_term",
    "g_at_1",
    "h0",
    "hankel_power_quad",
    "im_closed_form",
    "im_quad",
    "lambda_coeffs",
    "mertens_c1",
    "mobius",
    "parse_report",
    "pi_value",
    "pk_polynomial",
    "prime_recip_table",
    "prime_zeta",
    "recip_gamma_derivs",
    "sieve",
    "sk_direct",
    "sk_fast",
    "summary_stats",
    "to_decimal",
    "verify_grid",
    "zeta_int",
]
