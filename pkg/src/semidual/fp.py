"""Dense linear algebra over small prime fields F_p.

Matrices are numpy integer arrays with entries in [0, p).  Vectors are
columns; a "basis matrix" stores basis vectors as its columns.
"""
from __future__ import annotations

import numpy as np

SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def _dtype(p: int):
    # products of two residues must not overflow before reduction
    return np.int16 if p <= 181 else np.int64


def asmat(a, p: int, shape=None) -> np.ndarray:
    m = np.asarray(a, dtype=np.int64) % p
    if shape is not None:
        m = m.reshape(shape)
    return m.astype(_dtype(p))


def inverse_mod(a: int, p: int) -> int:
    return pow(int(a), p - 2, p)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` over F_p and its pivot columns."""
    m = asmat(a, p).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        if p != 2:
            inv = inverse_mod(m[r, c], p)
            if inv != 1:
                m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            if p == 2:
                m[hit] ^= m[r]
            else:
                m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    # eliminate along the shorter side
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (as columns) of {v : a v = 0}."""
    a = np.asarray(a)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=_dtype(p))
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((cols, len(free)), dtype=_dtype(p))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = (-int(r[i, f])) % p
    return basis


def column_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Columns of ``a`` forming a basis of its column space (first-found)."""
    a = asmat(a, p)
    if a.size == 0:
        return np.zeros((a.shape[0], 0), dtype=a.dtype)
    _, pivots = rref(a, p)
    return a[:, pivots]


def extend_basis(sub: np.ndarray, vecs: np.ndarray, p: int) -> list[int]:
    """Indices of columns of ``vecs`` that extend span(sub) to span(sub, vecs)."""
    k = sub.shape[1]
    _, pivots = rref(np.hstack([sub, vecs]), p)
    return [c - k for c in pivots if c >= k]


def solve_in_basis(basis: np.ndarray, vecs: np.ndarray, p: int) -> np.ndarray:
    """Coordinates X with basis @ X = vecs; raises if some vector is outside the span."""
    k = basis.shape[1]
    aug = np.hstack([asmat(basis, p), asmat(vecs, p)])
    r, pivots = rref(aug, p)
    if any(c >= k for c in pivots):
        raise ValueError("vector not in span of basis")
    if len(pivots) != k:
        raise ValueError("basis columns are dependent")
    return r[:k, k:]


def is_invertible(a: np.ndarray, p: int) -> bool:
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


_EXACT_FLOAT = 2 ** 52


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product mod p.  Uses BLAS in float64 whenever every partial sum stays exact."""
    a, b = np.asarray(a), np.asarray(b)
    inner = a.shape[-1] if a.ndim else 1
    if inner * (p - 1) ** 2 < _EXACT_FLOAT:
        prod = np.asarray(a % p, dtype=np.float64) @ np.asarray(b % p, dtype=np.float64)
        return (prod.astype(np.int64) % p).astype(_dtype(p))
    return ((a.astype(np.int64) @ b.astype(np.int64)) % p).astype(_dtype(p))
