import itertools

import numpy as np
from hypothesis import given, settings, strategies as st

from semidual import fp


def brute_rank(a, p):
    """Rank as the size of the largest nonzero minor (tiny matrices only)."""
    a = np.asarray(a, dtype=np.int64)
    r, c = a.shape
    for k in range(min(r, c), 0, -1):
        for rows in itertools.combinations(range(r), k):
            for cols in itertools.combinations(range(c), k):
                if round(np.linalg.det(a[np.ix_(rows, cols)])) % p:
                    return k
    return 0


def test_inverse_mod():
    assert [fp.inverse_mod(x, 5) for x in range(1, 5)] == [1, 3, 2, 4]


def test_rank_small():
    assert fp.rank([[1, 2], [2, 4]], 3) == 1
    assert fp.rank([[1, 1], [1, 0]], 2) == 2
    assert fp.rank(np.zeros((3, 4), dtype=int), 5) == 0


matrices = st.tuples(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda t: st.tuples(st.just(t[0]), st.lists(st.lists(st.integers(0, t[0] - 1), min_size=t[2], max_size=t[2]),
                                              min_size=t[1], max_size=t[1])))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_matches_minors(data):
    p, rows = data
    # determinants of integer matrices are exact in float for these sizes
    assert fp.rank(rows, p) == brute_rank(rows, p)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_nullspace_is_kernel(data):
    p, rows = data
    a = np.array(rows)
    ker = fp.nullspace(a, p)
    assert ker.shape[1] == a.shape[1] - fp.rank(a, p)
    assert not np.any(fp.matmul(a, ker, p))
    assert fp.rank(ker, p) == ker.shape[1]


def test_solve_in_basis_roundtrip():
    p = 5
    basis = np.array([[1, 0], [2, 1], [0, 3]])
    x = np.array([[1, 4], [2, 0]])
    vecs = fp.matmul(basis, x, p)
    assert np.array_equal(fp.solve_in_basis(basis, vecs, p) % p, x % p)


def test_matmul_large_inner_dimension_exact():
    rng = np.random.default_rng(0)
    a = rng.integers(0, 181, size=(4, 3000))
    b = rng.integers(0, 181, size=(3000, 5))
    assert np.array_equal(fp.matmul(a, b, 181), (a @ b) % 181)
