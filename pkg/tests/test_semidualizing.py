import numpy as np
import pytest

from semidual.artinian import external_tensor, hom_module, matlis_dual, regular_module, residue_field
from semidual.resolution import betti_numbers
from semidual.semidualizing import (
    PreconditionError,
    _batch_invertible,
    beta_inequality_check,
    betti_convolution_check,
    block_seeds,
    classification_search,
    cor_betti_check,
    dagger_checks,
    is_semidualizing,
    iso_search,
    iso_test,
    standard_modules,
    variable_blocks,
)
from semidual import fp

from conftest import algebra


def test_verdicts(m2_f3, m2_f2):
    R, D = standard_modules(m2_f3)
    assert str(is_semidualizing(R)) == "yes"
    assert str(is_semidualizing(D)) == "yes-up-to(8)"
    v = is_semidualizing(residue_field(m2_f2))
    assert not v.holds and "homothety" in v.witness and "dim Hom(k,k)=1" in v.witness
    with pytest.raises(ValueError):
        is_semidualizing(R, 0)


def test_iso_examples(m2_f3):
    R, D = standard_modules(m2_f3)
    assert iso_test(D, D)
    res = iso_search(D, R)
    assert not res.isomorphic and res.method == "invariants"
    A = algebra("x", [(3,)], 3)
    RA, DA = standard_modules(A)
    assert iso_test(DA, RA)


def line_quotient(A, cx, cy):
    """R / (cx*x + cy*y) as a cokernel."""
    mat = np.zeros((1, 1, A.dim), dtype=int)
    mat[0, 0, A.index[(1, 0)]] = cx
    mat[0, 0, A.index[(0, 1)]] = cy
    from semidual.artinian import cokernel
    return cokernel(A, mat)


def test_iso_exhaustive_branch_certifies_negative(m2_f3):
    M, N = line_quotient(m2_f3, 1, 1), line_quotient(m2_f3, 1, 2)
    assert M.invariants() == N.invariants()
    res = iso_search(M, N)
    assert not res.isomorphic and res.method == "exhaustive" and res.certain
    assert res.label == "not-isomorphic"


def test_iso_witness_is_invertible(m2_f3):
    M, N = line_quotient(m2_f3, 1, 1), line_quotient(m2_f3, 2, 2)
    res = iso_search(M, N)
    assert res.isomorphic and fp.rank(res.witness, 3) == M.dim


def test_batch_invertible_matches_rank():
    rng = np.random.default_rng(3)
    mats = rng.integers(0, 3, size=(300, 4, 4))
    got = _batch_invertible(mats, 3)
    want = np.array([fp.rank(m, 3) == 4 for m in mats])
    assert np.array_equal(got, want)


def test_dagger_examples(m2_f3):
    R, D = standard_modules(m2_f3)
    rep = dagger_checks(R)
    assert rep.verdict == "pass"
    assert iso_test(hom_module(R, D), D)
    rep = dagger_checks(D)
    assert rep.verdict == "pass" and rep.data["dagger_iso_R"]
    with pytest.raises(PreconditionError):
        dagger_checks(residue_field(m2_f3))


def test_betti_convolution(m2_f3):
    R, D = standard_modules(m2_f3)
    assert betti_convolution_check(R).verdict == "pass"
    assert betti_convolution_check(D).verdict == "pass"


def test_beta_inequality(m2_f3):
    R, D = standard_modules(m2_f3)
    rep = beta_inequality_check(D)
    assert (rep.data["beta0"], rep.data["beta1"], rep.verdict) == (2, 3, "pass")
    with pytest.raises(PreconditionError):
        beta_inequality_check(R)


def test_cor_betti_not_applicable(m2_f3):
    assert cor_betti_check(m2_f3, trials=50).verdict == "not-applicable"
    assert cor_betti_check(algebra("x", [(3,)], 2), trials=20).verdict == "not-applicable"


def test_beta0_product_identity(m2_f3, tensor9):
    for A in (m2_f3, tensor9):
        R, D = standard_modules(A)
        assert betti_numbers(D, 0)[0] == A.socle_dim
        for C in [R, D] + block_seeds(A):
            Cd = hom_module(C, D)
            assert C.num_generators * Cd.num_generators == D.num_generators


def test_variable_blocks(tensor9, m2_f3):
    assert variable_blocks(tensor9) == [(0, 1), (2, 3)]
    assert variable_blocks(m2_f3) == [(0, 1)]
    assert block_seeds(m2_f3) == []


def test_block_seed_equals_external_tensor(tensor9):
    A = algebra("ab", [(2, 0), (1, 1), (0, 2)], 2)
    B = algebra("cd", [(2, 0), (1, 1), (0, 2)], 2)
    (RA, DA), (RB, DB) = standard_modules(A), standard_modules(B)
    ext_mod = external_tensor(DA, RB, algebra=tensor9)
    seeds = block_seeds(tensor9)
    assert any(iso_test(ext_mod, s) for s in seeds)


def test_search_gorenstein_single_class(x4_f2):
    found = classification_search(x4_f2, trials=200)
    assert found.labels == ["R"]
    R, D = standard_modules(x4_f2)
    assert iso_test(D, R)


def test_search_is_seeded(m2_f2):
    a = classification_search(m2_f2, trials=60, seed=11).to_json()
    b = classification_search(m2_f2, trials=60, seed=11).to_json()
    assert a == b


def test_cyclic_semidualizing_is_free(m2_f2):
    found = classification_search(m2_f2, trials=100)
    assert found.stats["cyclic_semidualizing_not_R"] == 0
