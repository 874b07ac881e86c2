"""Certifying semidualizing modules over small Artinian algebras over F_p."""

from semidual.artinian import algebra_from_ideal, external_tensor, residue_field
from semidual.monomial import MonomialIdeal, PolyContext
from semidual.resolution import betti_numbers, ext
from semidual.semidualizing import (
    betti_convolution_check,
    classification_search,
    cor_betti_check,
    dagger_checks,
    is_semidualizing,
    iso_test,
    standard_modules,
)

square = ((2, 0), (1, 1), (0, 2))
A = algebra_from_ideal(MonomialIdeal(PolyContext.standard(2), square), 3)
R, D = standard_modules(A)
print(f"A = F_3[x,y]/(x,y)^2: dim {A.dim}, socle dim {A.socle_dim}, Gorenstein: {A.is_gorenstein}")
print("R:", is_semidualizing(R), "| D:", is_semidualizing(D), "| k:", is_semidualizing(residue_field(A)))
print("D iso R?", iso_test(D, R))
print("Betti numbers of D:", betti_numbers(D, 5))
print("Ext^i(D, D):", ext(D, D, 6))
print("dagger checks on D:", dagger_checks(D).checks)

# The tensor square has four semidualizing classes.
A1 = algebra_from_ideal(MonomialIdeal(PolyContext(("a", "b")), square), 2)
A2 = algebra_from_ideal(MonomialIdeal(PolyContext(("c", "d")), square), 2)
(R1, D1), (R2, D2) = standard_modules(A1), standard_modules(A2)
C = external_tensor(D1, R2)
B = C.algebra
RB, DB = standard_modules(B)
print(f"\nB = A1 (x) A2 over F_2: dim {B.dim}; C = D_A1 (x) R_A2:", is_semidualizing(C, 6))
print("C iso R?", iso_test(C, RB), " C iso D?", iso_test(C, DB))
print("beta(D_B):", betti_numbers(DB, 4), "  beta(C):", betti_numbers(C, 4))
print("convolution identity:", betti_convolution_check(C, 4).verdict)
print("beta_1(D) >= 2 beta_0(D):", cor_betti_check(B, C, i_max=6).data)

# Randomized census: embedding dimension two leaves only R and D.
A0 = algebra_from_ideal(MonomialIdeal(PolyContext.standard(2), square), 2)
found = classification_search(A0, trials=300, seed=1)
print("\nclasses over F_2[x,y]/(x,y)^2:", found.labels, found.stats)
found = classification_search(B, trials=100, seed=1)
print("classes over B:", found.labels)
