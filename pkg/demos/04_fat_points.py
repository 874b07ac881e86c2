"""Degrees of fat point schemes in the projective plane."""
import itertools

from semidual.fat_points import FatPointScheme, degree_slice, hilbert_function, multiplicity_equality_check

S = FatPointScheme.create([(1, 0, 0)], [2])
print("double point [1:0:0]: HF", hilbert_function(S).values)
print("quadrics through it to order 2:", degree_slice(S, 2).forms("xyz"))

collinear = [(1, 0, 0), (1, 1, 0), (1, 2, 0)]
general = [(1, 1, 1), (1, 2, 3), (2, -1, 5)]
for name, pts in (("collinear", collinear), ("general", general)):
    print(f"\n{name} points")
    for ms in itertools.product((1, 2, 3), repeat=3):
        rep = multiplicity_equality_check(FatPointScheme.create(pts, ms))
        if ms in ((1, 1, 1), (2, 1, 1), (3, 3, 3)):
            print(f"  m = {ms}: HF {list(rep.hf.values)} degree {rep.degree} = sum of C(m+1, 2) = {rep.expected}")
