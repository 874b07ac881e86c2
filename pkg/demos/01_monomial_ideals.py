"""A walk through monomial-ideal combinatorics.

Run with ``python demos/01_monomial_ideals.py``.
"""
from semidual.monomial import (
    MonomialIdeal,
    PolyContext,
    associated_primes,
    decomposition_radical,
    irreducible_decomposition,
    localize,
    polarize,
    radical,
)
from semidual.hilbert import polarization_hilbert_check

ctx = PolyContext.standard(2)

# A line with an embedded point: (x^2, xy) = (x) cap (x^2, y).
I = MonomialIdeal(ctx, ((2, 0), (1, 1)))
print("I =", I)
print("irreducible components:", irreducible_decomposition(I))

primes = associated_primes(I)
for P in primes.primes:
    kind = "minimal" if P.minimal else "embedded"
    print(f"  associated prime ({', '.join(P.names(ctx))}) — {kind}")
print("dim S/I =", primes.dim)

# Radical two ways: from supports of generators, and from the components.
print("radical:", radical(I), "| rebuilt from components:", decomposition_radical(I))

# Localizing at (x) inverts y; inside k[x]_(x) the ideal becomes (x).
(P,) = primes.minimal_primes
print("I localized at (x):", localize(I, P))

# Polarization trades powers for new variables and keeps the Hilbert function
# after dividing out the regular sequence of differences.
J = MonomialIdeal(ctx, ((2, 0), (1, 1), (0, 3)))
pol = polarize(J)
print("\npolarization of", J, "->", pol.ideal, "in", pol.ctx.names)
print("depolarizing differences:", [f"{a}-{b}" for a, b in pol.differences()])
chk = polarization_hilbert_check(J)
print("Hilbert function of S/J:", chk["values"])
print("after the regular sequence:", chk["reduced_polarized"], "->", chk["check"])
