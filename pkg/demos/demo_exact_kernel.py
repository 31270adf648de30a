#!/usr/bin/env python3
"""The exact arithmetic kernel, bottom up.

Scalars are Laurent polynomials in q (half-integer exponents) and the
coupling K over the rationals; q-integers and Gaussian binomials are
built on top, and the alternating binomial sums behind the deformed
Serre relations vanish identically.  Expanding q = e^hbar gives exact
truncated series, which is how the classical limits are taken.
"""

from qtoda import (
    LaurentQK, q_integer, q_binomial, serre_scalar_sum,
    jet_expand, jet_divide,
    build_orientation, verify_serre_homomorphism, qp_normal_order,
)

Q = LaurentQK.q

print("q-integers and binomials (exact Laurent polynomials):")
for a in (2, 3, 4):
    print("  [%d]   = %s" % (a, q_integer(a).text()))
print("  [4,2] = %s" % q_binomial(4, 2).text())
print("  bar-invariant:", q_binomial(4, 2) == q_binomial(4, 2).bar())

print()
print("Alternating Serre sums vanish for every Cartan entry:")
for a_ij in (0, -1, -2):
    s = serre_scalar_sum(a_ij, a_ij, 1)
    print("  a_ij = %2d  ->  %s" % (a_ij, s.text()))

print()
print("The same cancellation inside the quantum polynomial algebra,")
print("for the cyclic affine diagram at rank 4 (all ordered pairs):")
report = verify_serre_homomorphism(build_orientation(5, affine=True))
print("  pairs checked: %d, all vanish: %s"
      % (len(report["checks"]), report["ok"]))

print()
print("Normal ordering collects one q power per transposition:")
o = build_orientation(3)
scal, word = qp_normal_order((2, 1, 2, 1), o)
print("  x2 x1 x2 x1  ->  (%s) * x%s" % (scal.text(), list(word)))

print()
print("Truncated expansions at q = e^hbar (exact rational coefficients):")
c = Q(1) - Q(-1)
jet = jet_expand(c, 5)
print("  q - q^-1      =", jet)
ratio = jet_divide(jet_expand(Q(2) - 2 + Q(-2), 5), jet_expand(c * c, 5))
print("  (q-q^-1)^2 expansions divide to", ratio)
