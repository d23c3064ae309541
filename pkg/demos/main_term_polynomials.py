#!/usr/bin/env python3
"""Building the main-term polynomials P_k two ways.

The coefficient formula (lambda path) and the shifted-binomial assembly
must give the same polynomial; for k <= 4 both match the classical
closed forms expanded from c1, pi^2, zeta(3) and pi^4.
"""

from mpmath import mp

from mertens_sums import ConstantsBundle, evaluate_main_term, pk_polynomial, to_decimal
from mertens_sums.asymptotics import CLOSED_FORM_STRINGS, closed_form_coefficients

bundle = ConstantsBundle.build(192, m_max=12)

for k in (1, 2, 3, 4):
    print(f"=== k = {k}:  {CLOSED_FORM_STRINGS[k]} ===")
    lam = pk_polynomial(k, bundle, "lambda")
    bino = pk_polynomial(k, bundle, "binomial")
    closed = closed_form_coefficients(k, bundle)
    for j in range(k + 1):
        with mp.workprec(224):
            d_path = abs(lam.coeffs[j] - bino.coeffs[j])
            d_gold = abs(lam.coeffs[j] - closed[j])
        print(
            f"  X^{j}: {to_decimal(lam.coeffs[j], 30)}"
            f"   two-path delta {to_decimal(d_path, 3)}"
            f"   closed-form delta {to_decimal(d_gold, 3)}"
        )
    print()

print("=== the main term in action ===")
print("P_k(loglog x) for a few x:")
for k in (1, 2, 3):
    for x in (100, 10**6, 10**12):
        print(f"  k={k} x=10^{len(str(x))-1}: {to_decimal(evaluate_main_term(k, x, bundle), 15)}")
