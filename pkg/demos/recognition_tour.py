#!/usr/bin/env python3
"""How decimals become exact algebraic numbers before any divisibility test.

Every p-adic statement in this package is made about exact rationals or
cyclotomic integers, never about floats. The bridge is interval arithmetic
plus rational reconstruction: a decimal with an error bar either pins down a
unique small-denominator rational, or the computation refuses to proceed.
"""
from fractions import Fraction

from twistcong.exact import (
    AmbiguousRecognitionError, CyclotomicNumber, DecimalWithError,
    RecognitionError, p_valuation, rational_reconstruct, real_embedding,
    recognize_orbit, sqrt_in_cyclotomic, sqrt_rational_approx,
)

# a value known to 12 digits recognizes to the fraction it came from
x = DecimalWithError.parse("1.263157894737", "0.000000000001")
print("1.263157894737 +/-", float(x.abs_error), "->", rational_reconstruct(x))

# widen the error bar and the same digits stop being conclusive
wide = DecimalWithError.parse("1.263157894737", "0.01")
try:
    rational_reconstruct(wide)
except AmbiguousRecognitionError as e:
    print("with a 1e-2 bar:", e)

# and an absurd denominator bound fails loudly instead of guessing
try:
    rational_reconstruct(x, den_bound=3)
except RecognitionError as e:
    print("with denominators capped at 3:", e)
print()

# conjugate pairs are recognized jointly through their sum and product, with
# the square root realized exactly inside a cyclotomic field via a Gauss sum
root5 = sqrt_rational_approx(5, 40)
pair = [DecimalWithError.exact(24) + 8 * root5,
        DecimalWithError.exact(24) - 8 * root5]
orbit = recognize_orbit(pair, 5)
print("pair 24 +/- 8*sqrt(5) recognized in Q(zeta_5):")
for v in orbit.values:
    print("  coefficients on the power basis:", [str(c) for c in v.coeffs])
print("  minimal polynomial coefficients, ascending:",
      [str(c) for c in orbit.min_poly])
print("  radicand:", orbit.radicand)
print()

# the exact square root really squares to 5
r5 = sqrt_in_cyclotomic(5, 5)
print("sqrt(5) in Q(zeta_5):", [str(c) for c in r5.coeffs],
      " squares to", (r5 * r5).rational_part())
print("its real embedding:", float(real_embedding(r5).value))
print()

# valuations extend to cyclotomic integers through norms; the element
# 1 - zeta_5 is the standard uniformizer above 5
z = CyclotomicNumber.zeta_power(5, 1)
pi5 = CyclotomicNumber.rational(1) - z
print("v_5(1 - zeta_5) =", p_valuation(pi5, 5))
print("v_5(1/25)       =", p_valuation(CyclotomicNumber.rational(Fraction(1, 25)), 5))
print("v_5(24 + 8*sqrt(5)) =", p_valuation(orbit.values[0], 5))
