"""The quadratic dual algebra and its graded Lie dimensions.

Dualizing the skew ring's quadratic presentation gives an ordinary algebra on
three-index generators whose relations are the commutator families; on a
conjecturally Koszul ring the dual's Hilbert series is the reciprocal of the
primal one at -t.  The dual of an enveloping algebra also determines graded
Lie algebra dimensions through the Poincare-Birkhoff-Witt identity.
"""

from forestalg.quadratic_dual import (dual_span_matches_explicit,
                                      inverse_hilbert_coefficients,
                                      koszul_numerator_check,
                                      ln_dimension_from_pbw, un_dimension)

print("the annihilator of the primal relations equals the commutator span:")
for n in (4, 5, 6, 7):
    print(f"  n={n}: {dual_span_matches_explicit(n)}")

print()
print("dual dimensions vs the reciprocal series (degree <= 3):")
for n in range(4, 10):
    rep = koszul_numerator_check(n, 3)
    print(f"  n={n}: dims {rep['dims']} expected {rep['expected']} "
          f"match={rep['match']}")

print()
print("graded Lie dimensions from the PBW identity:")
for n in (4, 5, 6, 7):
    dims = [un_dimension(n, d) for d in range(4)]
    print(f"  n={n}: U-dims {dims} -> Lie dims {ln_dimension_from_pbw(n, 3, dims)}")

print()
print("one generator (n=4) really is a polynomial ring:",
      inverse_hilbert_coefficients(4, 5))
