import numpy as np
import pytest

from semidual import fp
from semidual.artinian import (
    ModuleError,
    NotArtinian,
    algebra_from_ideal,
    cokernel,
    direct_sum,
    external_tensor,
    free_module,
    hom_basis,
    hom_module,
    matlis_dual,
    module_from_arrays,
    regular_module,
    residue_field,
    tensor_product,
)
from semidual.monomial import MonomialIdeal, PolyContext
from semidual.semidualizing import iso_test

from conftest import algebra, ideal
from oracles import hom_dim_bruteforce


def test_algebra_basics(m2_f3):
    assert m2_f3.dim == 3 and m2_f3.socle_dim == 2 and m2_f3.embedding_dim == 2
    assert not m2_f3.is_gorenstein


def test_not_artinian():
    with pytest.raises(NotArtinian):
        algebra_from_ideal(ideal("xy", (1, 1)), 3)


def test_module_validation(m2_f3):
    x = np.array([[0, 0], [1, 0]])
    with pytest.raises(ModuleError):
        module_from_arrays(m2_f3, [x, x.T])  # actions do not commute
    with pytest.raises(ModuleError):
        module_from_arrays(algebra("x", [(2,)], 3), [np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0]])])


def test_hom_dimensions(m2_f3):
    R, k = regular_module(m2_f3), residue_field(m2_f3)
    D = matlis_dual(R)
    assert hom_basis(D, D).shape[0] == 3
    assert hom_basis(k, k).shape[0] == 1
    for M in (R, D, k, direct_sum(D, k)):
        assert hom_basis(R, M).shape[0] == M.dim
        assert matlis_dual(M).dim == M.dim
        for N in (R, D, k):
            assert hom_basis(M, N).shape[0] == hom_dim_bruteforce(M, N)


def test_dual_socle_and_generators(m2_f3):
    R = regular_module(m2_f3)
    D = matlis_dual(R)
    assert D.num_generators == m2_f3.socle_dim == 2
    assert D.socle_dim == 1
    assert iso_test(matlis_dual(D), R)


def test_tensor_examples(m2_f3):
    R, k = regular_module(m2_f3), residue_field(m2_f3)
    D = matlis_dual(R)
    assert iso_test(tensor_product(R, D)[0], D)
    assert tensor_product(k, k)[0].dim == 1
    C = D
    T, _ = tensor_product(C, hom_module(C, D))
    assert iso_test(T, D)


def test_hom_module_actions_are_maps(m2_f3):
    D = matlis_dual(regular_module(m2_f3))
    H = hom_module(D, D)
    assert iso_test(H, regular_module(m2_f3))


def test_cokernel_of_variable_is_quotient(m2_f3):
    mat = np.zeros((1, 1, 3), dtype=int)
    mat[0, 0, m2_f3.index[(1, 0)]] = 1
    Q = cokernel(m2_f3, mat)
    assert Q.dim == 2 and Q.num_generators == 1


def test_external_tensor_examples(m2_f2):
    R = regular_module(m2_f2)
    k = residue_field(m2_f2)
    RR = external_tensor(R, R)
    assert iso_test(RR, regular_module(RR.algebra))
    kk = external_tensor(k, k)
    assert iso_test(kk, residue_field(kk.algebra))
    assert RR.algebra is kk.algebra
    assert RR.algebra.ctx.names == ("x", "y", "x'", "y'")


def test_external_tensor_prime_mismatch(m2_f2, m2_f3):
    with pytest.raises(ValueError):
        external_tensor(regular_module(m2_f2), regular_module(m2_f3))


def test_free_module_rank(m2_f3):
    F = free_module(m2_f3, 3)
    assert F.dim == 9 and F.num_generators == 3


@pytest.mark.parametrize("names,gens,p", [
    ("x", [(3,)], 3), ("x", [(4,)], 2), ("xy", [(2, 0), (0, 2)], 5),
    ("xy", [(2, 0), (1, 1), (0, 2)], 3), ("xy", [(2, 0), (1, 1), (0, 3)], 2),
    ("xyz", [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 1)], 3),
])
def test_gorenstein_equivalence(names, gens, p):
    A = algebra(names, gens, p)
    R = regular_module(A)
    assert (A.socle_dim == 1) == iso_test(matlis_dual(R), R)
