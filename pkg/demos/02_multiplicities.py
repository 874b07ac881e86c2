"""Hilbert-Samuel multiplicities and the additivity formula, computed exactly."""
from semidual.hilbert import (
    additivity_check,
    canonical_multiplicity_check,
    hilbert_polynomial,
    hilbert_samuel,
)
from semidual.monomial import MonomialIdeal, PolyContext, enumerate_ideals, associated_primes

ctx = PolyContext.standard(2)
m = MonomialIdeal.maximal(ctx)
xy = MonomialIdeal(ctx, ((1, 1),))  # two crossing lines

hp = hilbert_polynomial(xy)
print("Hilbert function of k[x,y]/(xy):", hp.values[:8], "... polynomial", hp.polynomial)
print("e(m) from the Hilbert polynomial:", hp.multiplicity)
print("e(m) from Hilbert-Samuel lengths:", hilbert_samuel(xy, m).multiplicity)

J = MonomialIdeal(ctx, ((2, 0), (0, 1)))
rep = additivity_check(xy, J)
print(f"\ne(J) for J = {J}: {rep.lhs}")
for term in rep.terms:
    print(f"  prime ({', '.join(term['prime'])}): length {term['length']} x e(J; R/P) = {term['e_quotient']}")
print("  sum:", rep.rhs, "->", rep.check)

# The canonical module has the same multiplicity as the ring.
rep = canonical_multiplicity_check(xy)
print(f"\ncanonical numerator {rep.numerator_canonical} vs ring numerator {rep.numerator_ring}: "
      f"e = {rep.e_canonical} vs {rep.e_ring}")

# A small sweep: every ideal of k[x,y] with generators of degree <= 2.
ideals = list(enumerate_ideals(2, 2))
print(f"\nadditivity over {len(ideals)} ideals:",
      sum(additivity_check(I).check == "pass" for I in ideals), "passes")
dims = [associated_primes(I).dim for I in ideals]
print("dimension histogram:", {d: dims.count(d) for d in sorted(set(dims))})
