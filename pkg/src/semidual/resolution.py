"""Minimal free resolutions, Ext and Tor over Artinian algebras.

A free module R^b is stored in k-coordinates with index ``t * dim A + c``
(component t, basis monomial c).  A differential d_i : F_i -> F_{i-1} is kept as a
"ring matrix": an integer array of shape (b_{i-1}, b_i, dim A) whose
[t, s] entry is the ring element in row t, column s.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import weakref
from functools import lru_cache

import numpy as np

from . import fp
from .artinian import FiniteModule, matlis_dual, submodule


def ring_matrix_on(M: FiniteModule, delta: np.ndarray, hom: bool = False) -> np.ndarray:
    """k-matrix of a ring matrix acting on copies of M.

    With ``hom=False`` this is delta (x) M : M^{b_i} -> M^{b_{i-1}}; with
    ``hom=True`` it is Hom(delta, M) : M^{b_{i-1}} -> M^{b_i}.
    """
    bt, bs, _ = delta.shape
    acts = M.basis_actions.astype(np.int64)
    blocks = np.tensordot(delta.astype(np.int64), acts, axes=(2, 0)) % M.p  # (t, s, a, b)
    if hom:
        blocks = blocks.transpose(1, 2, 0, 3)  # rows (s, a), cols (t, b)
        return fp.asmat(blocks.reshape(bs * M.dim, bt * M.dim), M.p)
    return fp.asmat(blocks.transpose(0, 2, 1, 3).reshape(bt * M.dim, bs * M.dim), M.p)


@dataclass(eq=False)
class ResolutionSegment:
    """F_L -> ... -> F_0 -> M -> 0, minimal, computed on demand."""
    module: FiniteModule
    betti: list[int] = field(default_factory=list)
    differentials: list[np.ndarray] = field(default_factory=list)  # d_1..d_L ring matrices
    augmentation: np.ndarray | None = None  # dim M x b_0 generator vectors
    kernels: dict[int, np.ndarray] = field(default_factory=dict)  # i -> basis of ker(F_i -> F_{i-1} or M)

    @property
    def algebra(self):
        return self.module.algebra

    @property
    def length(self) -> int:
        return len(self.betti) - 1

    def k_differential(self, i: int) -> np.ndarray:
        """k-matrix of d_i : F_i -> F_{i-1} (i >= 1)."""
        return ring_matrix_on(_regular(self.algebra), self.differentials[i - 1])

    def k_augmentation(self) -> np.ndarray:
        """k-matrix of F_0 -> M."""
        M, A = self.module, self.algebra
        g = self.augmentation.astype(np.int64)
        acts = M.basis_actions.astype(np.int64)
        # column (s, c) = (basis monomial c) . g_s
        out = np.einsum("cab,bs->asc", acts, g) % M.p
        return fp.asmat(out.reshape(M.dim, -1), M.p)

    def is_minimal(self) -> bool:
        one = self.algebra.index[self.algebra.ctx.one()]
        return all(not np.any(d[:, :, one]) for d in self.differentials)

    def verify(self) -> dict:
        """Minimality, d^2 = 0 and exactness by rank counts at every computed stage."""
        p = self.module.p
        A = self.algebra
        maps = [self.k_augmentation()] + [self.k_differential(i) for i in range(1, self.length + 1)]
        ranks = [fp.rank(m, p) for m in maps]
        square_zero = all(
            not np.any(fp.matmul(maps[i], maps[i + 1], p)) for i in range(len(maps) - 1)
        )
        surjective = ranks[0] == self.module.dim
        exact = all(
            self.betti[i] * A.dim - ranks[i] == ranks[i + 1] for i in range(len(maps) - 1)
        )
        return {"minimal": self.is_minimal(), "square_zero": square_zero,
                "surjective": surjective, "exact": exact,
                "ok": self.is_minimal() and square_zero and surjective and exact}

    def syzygy(self, i: int) -> FiniteModule:
        """The i-th syzygy module (i >= 1) as a module in its own right."""
        if i == 0:
            return self.module
        self.extend(i - 1)
        ker = self.kernel(i - 1)
        F = _free(self.algebra, self.betti[i - 1])
        if ker.shape[1] == 0:
            return _zero_module(self.algebra)
        mod, _ = submodule(F, ker, f"syz{i}({self.module.name})")
        return mod

    def kernel(self, i: int) -> np.ndarray:
        """Basis of the kernel of F_i -> F_{i-1} (of F_0 -> M for i = 0)."""
        if i not in self.kernels:
            p = self.module.p
            if self.betti[i] == 0:
                self.kernels[i] = np.zeros((0, 0), dtype=np.int64)
            elif i == 0:
                self.kernels[i] = fp.nullspace(self.k_augmentation(), p)
            else:
                self.kernels[i] = fp.nullspace(self.k_differential(i), p)
        return self.kernels[i]

    def extend(self, L: int) -> "ResolutionSegment":
        """Compute the resolution through F_L."""
        M, A, p = self.module, self.algebra, self.module.p
        if self.augmentation is None:
            self.augmentation = M.minimal_generators
            self.betti.append(self.augmentation.shape[1])
        while self.length < L:
            i = self.length + 1
            b_prev = self.betti[i - 1]
            ker = self.kernel(i - 1)
            if ker.shape[1] == 0:
                self.differentials.append(np.zeros((b_prev, 0, A.dim), dtype=np.int64))
                self.betti.append(0)
                continue
            gens = _minimal_generators_of_submodule(A, b_prev, ker)
            delta = gens.T.reshape(-1, b_prev, A.dim).transpose(1, 0, 2)
            self.differentials.append(fp.asmat(delta, p))
            self.betti.append(gens.shape[1])
        return self


def _minimal_generators_of_submodule(A, b: int, basis: np.ndarray) -> np.ndarray:
    """Columns of ``basis`` (in R^b) whose classes span K / mK."""
    p = A.p
    F = _free(A, b)
    mK = np.hstack([fp.matmul(a, basis, p) for a in F.actions])
    mK = fp.column_basis(mK, p) if mK.size else mK
    if mK.shape[1] == 0:
        return basis
    idx = fp.extend_basis(mK, basis, p)
    return basis[:, idx]


@lru_cache(maxsize=None)
def _free_cached(A, b):
    from .artinian import free_module
    return free_module(A, b)


def _free(A, b):
    return _free_cached(A, b)


def _regular(A):
    return _regular_cached(A)


@lru_cache(maxsize=None)
def _regular_cached(A):
    from .artinian import regular_module
    return regular_module(A)


def _zero_module(A) -> FiniteModule:
    return FiniteModule(A, tuple(np.zeros((0, 0), dtype=np.int64) for _ in range(A.n)), None, "0")


_RES_CACHE: "weakref.WeakKeyDictionary[FiniteModule, ResolutionSegment]" = weakref.WeakKeyDictionary()


def resolution(M: FiniteModule, L: int) -> ResolutionSegment:
    """Shared, incrementally extended resolution of M."""
    res = _RES_CACHE.get(M)
    if res is None:
        res = _RES_CACHE[M] = ResolutionSegment(M)
    return res.extend(L)


def minimal_free_resolution(M: FiniteModule, L: int) -> ResolutionSegment:
    """Betti numbers b_0..b_L with their presentation matrices."""
    if L < 0:
        raise ValueError("L must be non-negative")
    return resolution(M, L)


def betti_numbers(M: FiniteModule, L: int) -> list[int]:
    return list(resolution(M, L).betti[: L + 1])


# Ext and Tor -------------------------------------------------------------------

def _hom_rank(res: ResolutionSegment, N: FiniteModule, i: int) -> int:
    """Rank of Hom(d_i, N) : N^{b_{i-1}} -> N^{b_i}; zero for i = 0."""
    if i == 0 or N.dim == 0:
        return 0
    d = res.differentials[i - 1]
    if d.shape[0] == 0 or d.shape[1] == 0:
        return 0
    return fp.rank(ring_matrix_on(N, d, hom=True), N.p)


def _tensor_rank(res: ResolutionSegment, N: FiniteModule, i: int) -> int:
    if i == 0 or N.dim == 0:
        return 0
    d = res.differentials[i - 1]
    if d.shape[0] == 0 or d.shape[1] == 0:
        return 0
    return fp.rank(ring_matrix_on(N, d), N.p)


def ext_dim_direct(M: FiniteModule, N: FiniteModule, i: int) -> int:
    """dim Ext^i(M, N) as homology of Hom(F, N) at F_i."""
    res = resolution(M, i + 1)
    return res.betti[i] * N.dim - _hom_rank(res, N, i) - _hom_rank(res, N, i + 1)


def tor_dim_direct(M: FiniteModule, N: FiniteModule, i: int) -> int:
    res = resolution(M, i + 1)
    return res.betti[i] * N.dim - _tensor_rank(res, N, i) - _tensor_rank(res, N, i + 1)


_COSYZ_CACHE: "weakref.WeakKeyDictionary[FiniteModule, tuple]" = weakref.WeakKeyDictionary()


def cosyzygy(N: FiniteModule, b: int) -> FiniteModule:
    """b-th cosyzygy of N in its minimal injective resolution, via the Matlis dual."""
    if b == 0:
        return N
    hit = _COSYZ_CACHE.get(N)
    if hit is None:
        hit = _COSYZ_CACHE[N] = (matlis_dual(N), {})
    dual, found = hit
    if b not in found:
        found[b] = matlis_dual(resolution(dual, b).syzygy(b))
    return found[b]


def _split(i: int) -> int:
    return i // 2


def ext_dim(M: FiniteModule, N: FiniteModule, i: int) -> int:
    """dim Ext^i(M, N), dimension-shifted in N: Ext^i(M,N) = Ext^{i-b}(M, cosyz^b N)."""
    if i == 0:
        return ext_dim_direct(M, N, 0)
    b = _split(i)
    Y = cosyzygy(N, b)
    if Y.dim == 0:
        return 0
    return ext_dim_direct(M, Y, i - b)


def tor_dim(M: FiniteModule, N: FiniteModule, i: int) -> int:
    """dim Tor_i(M, N), dimension-shifted in N: Tor_i(M,N) = Tor_{i-b}(M, syz^b N)."""
    if i == 0:
        return tor_dim_direct(M, N, 0)
    b = _split(i)
    Y = resolution(N, b).syzygy(b) if b else N
    if Y.dim == 0:
        return 0
    return tor_dim_direct(M, Y, i - b)


def ext(M: FiniteModule, N: FiniteModule, i_max: int) -> list[int]:
    """[dim Ext^0, ..., dim Ext^{i_max}]."""
    return [ext_dim(M, N, i) for i in range(i_max + 1)]


def tor(M: FiniteModule, N: FiniteModule, i_max: int) -> list[int]:
    return [tor_dim(M, N, i) for i in range(i_max + 1)]


def tensor_tor(M: FiniteModule, N: FiniteModule, i_max: int):
    """(M (x)_R N, [dim Tor_0, ..., dim Tor_{i_max}])."""
    from .artinian import tensor_product
    T, _ = tensor_product(M, N)
    return T, tor(M, N, i_max)
