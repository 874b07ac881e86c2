"""Finite-dimensional algebras S/I over F_p and their finite modules.

A module is a k-vector space with one action matrix per variable (acting
on column vectors).  Construction validates that the actions commute and
kill every generator of I, so any FiniteModule is a genuine S/I-module.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import fp
from .monomial import Monomial, MonomialIdeal, PolyContext, mul, standard_monomials


class NotArtinian(ValueError):
    pass


class ModuleError(ValueError):
    """An action fails the module axioms."""


@dataclass(frozen=True, eq=False)
class ArtinianAlgebra:
    ideal: MonomialIdeal
    p: int
    basis: tuple[Monomial, ...] = field(init=False)
    mult: tuple[np.ndarray, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if not fp.is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if not self.ideal.is_artinian:
            raise NotArtinian(f"{self.ideal} is not Artinian (missing a pure power)")
        basis = tuple(standard_monomials(self.ideal))
        index = {m: i for i, m in enumerate(basis)}
        mats = []
        for v in range(self.ctx.n):
            a = np.zeros((len(basis), len(basis)), dtype=fp._dtype(self.p))
            for j, m in enumerate(basis):
                t = mul(m, self.ctx.variable(v))
                if t in index:
                    a[index[t], j] = 1
            mats.append(a)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "mult", tuple(mats))

    @property
    def ctx(self) -> PolyContext:
        return self.ideal.ctx

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def index(self) -> dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.basis)}

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sum(m) for m in self.basis)

    @cached_property
    def basis_matrices(self) -> np.ndarray:
        """Stack T with T[c] = matrix of multiplication by basis monomial c."""
        out = np.zeros((self.dim, self.dim, self.dim), dtype=fp._dtype(self.p))
        for c, m in enumerate(self.basis):
            for j, b in enumerate(self.basis):
                t = mul(m, b)
                if t in self.index:
                    out[c, self.index[t], j] = 1
        return out

    @cached_property
    def socle_dim(self) -> int:
        return sum(1 for m in self.basis
                   if all(mul(m, self.ctx.variable(v)) not in self.index for v in range(self.n)))

    @property
    def embedding_dim(self) -> int:
        """Number of variables not already in I (minimal generators of the maximal ideal)."""
        return sum(1 for v in range(self.n) if not self.ideal.contains(self.ctx.variable(v)))

    @property
    def is_gorenstein(self) -> bool:
        return self.socle_dim == 1

    def element(self, coeffs: dict[Monomial, int]) -> np.ndarray:
        v = np.zeros(self.dim, dtype=fp._dtype(self.p))
        for m, c in coeffs.items():
            if m in self.index:
                v[self.index[m]] = (v[self.index[m]] + c) % self.p
        return v

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return fp.matmul(np.tensordot(np.asarray(a, dtype=np.int64), self.basis_matrices, axes=(0, 0)), b, self.p)

    def __repr__(self) -> str:
        return f"F_{self.p}[{','.join(self.ctx.names)}]/{self.ideal}"


def algebra_from_ideal(I: MonomialIdeal, p: int) -> ArtinianAlgebra:
    return ArtinianAlgebra(I, p)


@dataclass(frozen=True, eq=False)
class FiniteModule:
    algebra: ArtinianAlgebra
    actions: tuple[np.ndarray, ...]
    degrees: tuple[int, ...] | None = None
    name: str = ""

    def __post_init__(self):
        A = self.algebra
        acts = tuple(fp.asmat(a, A.p) for a in self.actions)
        if len(acts) != A.n:
            raise ModuleError(f"need {A.n} action matrices, got {len(acts)}")
        d = acts[0].shape[0] if acts else 0
        for a in acts:
            if a.shape != (d, d):
                raise ModuleError("action matrices must be square of a common size")
        object.__setattr__(self, "actions", acts)
        for i in range(A.n):
            for j in range(i + 1, A.n):
                if np.any(fp.matmul(acts[i], acts[j], A.p) != fp.matmul(acts[j], acts[i], A.p)):
                    raise ModuleError(f"actions of {A.ctx.names[i]} and {A.ctx.names[j]} do not commute")
        for g in A.ideal.gens:
            if np.any(self.monomial_action(g)):
                raise ModuleError(f"relation {A.ctx.format(g)} does not vanish on the module")
        if self.degrees is not None:
            degs = tuple(int(x) for x in self.degrees)
            if len(degs) != d:
                raise ModuleError("one degree per basis vector is required")
            object.__setattr__(self, "degrees", degs)
            for a in acts:
                rows, cols = np.nonzero(a)
                if any(degs[r] != degs[c] + 1 for r, c in zip(rows, cols)):
                    raise ModuleError("variable actions must raise degree by one")

    @property
    def dim(self) -> int:
        return self.actions[0].shape[0] if self.actions else 0

    @property
    def p(self) -> int:
        return self.algebra.p

    def monomial_action(self, m: Monomial) -> np.ndarray:
        out = np.eye(self.dim, dtype=np.int64)
        for v, e in enumerate(m):
            for _ in range(e):
                out = fp.matmul(self.actions[v], out, self.p)
        return fp.asmat(out, self.p)

    @cached_property
    def basis_actions(self) -> np.ndarray:
        """Stack with entry c = action of the c-th basis monomial of the algebra."""
        A = self.algebra
        out = np.zeros((A.dim, self.dim, self.dim), dtype=fp._dtype(self.p))
        for c, m in enumerate(A.basis):
            out[c] = self.monomial_action(m)
        return out

    def element_action(self, r: np.ndarray) -> np.ndarray:
        return fp.asmat(np.tensordot(np.asarray(r, dtype=np.int64), self.basis_actions.astype(np.int64),
                                     axes=(0, 0)), self.p)

    @cached_property
    def maximal_times(self) -> np.ndarray:
        """Basis of m*M."""
        if self.dim == 0:
            return np.zeros((0, 0), dtype=fp._dtype(self.p))
        return fp.column_basis(np.hstack(self.actions), self.p)

    @cached_property
    def minimal_generators(self) -> np.ndarray:
        """Vectors whose classes form a basis of M/mM (columns)."""
        eye = np.eye(self.dim, dtype=fp._dtype(self.p))
        idx = fp.extend_basis(self.maximal_times, eye, self.p)
        return eye[:, idx]

    @property
    def num_generators(self) -> int:
        return self.minimal_generators.shape[1]

    @cached_property
    def socle_dim(self) -> int:
        if self.dim == 0:
            return 0
        return self.dim - fp.rank(np.vstack(self.actions), self.p)

    def loewy_dims(self) -> tuple[int, ...]:
        """dim m^j M for j = 0, 1, ... until zero."""
        dims = [self.dim]
        cur = np.eye(self.dim, dtype=fp._dtype(self.p))
        while cur.shape[1]:
            nxt = np.hstack([fp.matmul(a, cur, self.p) for a in self.actions])
            cur = fp.column_basis(nxt, self.p) if nxt.size else nxt[:, :0]
            dims.append(cur.shape[1])
        return tuple(dims)

    def invariants(self) -> tuple:
        """Isomorphism invariants used to rule out isomorphisms cheaply."""
        return (self.dim, self.num_generators, self.socle_dim,
                tuple(fp.rank(a, self.p) for a in self.actions), self.loewy_dims())

    def __repr__(self) -> str:
        label = self.name or "module"
        return f"<{label}: dim {self.dim} over {self.algebra!r}>"


@dataclass(frozen=True, eq=False)
class HomModule(FiniteModule):
    """Hom_R(source, target) together with the k-basis of maps it is built on."""
    maps: np.ndarray | None = None  # shape (dim, target.dim, source.dim)
    source: FiniteModule | None = None
    target: FiniteModule | None = None

    def coordinates(self, phi: np.ndarray) -> np.ndarray:
        flat = self.maps.reshape(self.dim, -1).T
        return fp.solve_in_basis(flat, np.asarray(phi).reshape(-1, 1), self.p)[:, 0]


# constructions --------------------------------------------------------------

def regular_module(A: ArtinianAlgebra) -> FiniteModule:
    return FiniteModule(A, A.mult, A.degrees, "R")


def residue_field(A: ArtinianAlgebra) -> FiniteModule:
    return FiniteModule(A, tuple(np.zeros((1, 1), dtype=int) for _ in range(A.n)), (0,), "k")


def free_module(A: ArtinianAlgebra, rank: int) -> FiniteModule:
    acts = tuple(np.kron(np.eye(rank, dtype=int), a) for a in A.mult)
    return FiniteModule(A, acts, A.degrees * rank, f"R^{rank}")


def _normalize_degrees(degs):
    if degs is None or not degs:
        return degs
    lo = min(degs)
    return tuple(d - lo for d in degs)


def matlis_dual(M: FiniteModule) -> FiniteModule:
    """Hom_k(M, k) with transposed actions (dual basis)."""
    degs = None if M.degrees is None else _normalize_degrees(tuple(-d for d in M.degrees))
    name = {"R": "D", "D": "R"}.get(M.name, f"{M.name}^v" if M.name else "")
    return FiniteModule(M.algebra, tuple(a.T.copy() for a in M.actions), degs, name)


def hom_basis(M: FiniteModule, N: FiniteModule) -> np.ndarray:
    """k-basis of Hom_R(M, N) as an array of shape (r, dim N, dim M)."""
    p = M.p
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return np.zeros((0, n, m), dtype=fp._dtype(p))
    # vec(phi) row-major: phi[a, b] -> a*m + b
    eqs = []
    eye_m, eye_n = np.eye(m, dtype=np.int64), np.eye(n, dtype=np.int64)
    for am, an in zip(M.actions, N.actions):
        # phi @ am - an @ phi
        eqs.append(np.kron(eye_n, am.T.astype(np.int64)) - np.kron(an.astype(np.int64), eye_m))
    system = fp.asmat(np.vstack(eqs), p)
    ker = fp.nullspace(system, p)
    return ker.T.reshape(-1, n, m)


def hom_module(M: FiniteModule, N: FiniteModule) -> HomModule:
    """Hom_R(M, N) with the induced action (r.phi)(x) = r.phi(x)."""
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    p = M.p
    maps = hom_basis(M, N)
    r = maps.shape[0]
    flat = maps.reshape(r, -1).T  # columns are vec(phi)
    acts = []
    for an in N.actions:
        images = np.stack([fp.matmul(an, phi, p) for phi in maps]) if r else maps
        acts.append(fp.solve_in_basis(flat, images.reshape(r, -1).T, p) if r else np.zeros((0, 0)))
    name = f"Hom({M.name},{N.name})" if M.name and N.name else ""
    return HomModule(M.algebra, tuple(acts), None, name, maps, M, N)


def submodule(M: FiniteModule, basis: np.ndarray, name: str = "") -> tuple[FiniteModule, np.ndarray]:
    """Submodule spanned by the columns of ``basis`` (which must be stable)."""
    p = M.p
    basis = fp.column_basis(basis, p)
    acts = tuple(fp.solve_in_basis(basis, fp.matmul(a, basis, p), p) for a in M.actions)
    return FiniteModule(M.algebra, acts, None, name), basis


def quotient(M: FiniteModule, sub: np.ndarray, name: str = "") -> tuple[FiniteModule, np.ndarray]:
    """M / span(sub). Returns the quotient and the projection matrix."""
    p = M.p
    sub = fp.column_basis(sub, p) if sub.size else np.zeros((M.dim, 0), dtype=fp._dtype(p))
    eye = np.eye(M.dim, dtype=fp._dtype(p))
    comp = eye[:, fp.extend_basis(sub, eye, p)]
    # coordinates with respect to [sub | comp]; keep the comp part
    full = np.hstack([sub, comp])
    inv = fp.solve_in_basis(full, eye, p)
    proj = inv[sub.shape[1]:, :]
    acts = tuple(fp.matmul(proj, fp.matmul(a, comp, p), p) for a in M.actions)
    return FiniteModule(M.algebra, acts, None, name), proj


def cokernel(A: ArtinianAlgebra, matrix: np.ndarray, name: str = "") -> FiniteModule:
    """Cokernel of R^{b'} -> R^b given by a b x b' matrix of ring elements
    (array of shape (b, b', dim A))."""
    b, bp, _ = matrix.shape
    F = free_module(A, b)
    cols = []
    for s in range(bp):
        g = matrix[:, s, :]  # rows: components
        for c in range(A.dim):
            cols.append(fp.matmul(g, A.basis_matrices[c].T, A.p).reshape(-1))
    image = np.array(cols, dtype=np.int64).T if cols else np.zeros((F.dim, 0), dtype=np.int64)
    mod, _ = quotient(F, fp.asmat(image, A.p), name)
    return mod


def direct_sum(*mods: FiniteModule) -> FiniteModule:
    A = mods[0].algebra
    acts = []
    for v in range(A.n):
        blocks = [m.actions[v] for m in mods]
        size = sum(b.shape[0] for b in blocks)
        out = np.zeros((size, size), dtype=np.int64)
        o = 0
        for b in blocks:
            k = b.shape[0]
            out[o:o + k, o:o + k] = b
            o += k
        acts.append(out)
    degs = None
    if all(m.degrees is not None for m in mods):
        degs = tuple(d for m in mods for d in m.degrees)
    return FiniteModule(A, tuple(acts), degs, "+".join(m.name for m in mods))


def tensor_relations(M: FiniteModule, N: FiniteModule) -> np.ndarray:
    """Spanning set (columns) of the relations x m (x) n - m (x) x n in M (x)_k N."""
    p = M.p
    em, en = np.eye(M.dim, dtype=np.int64), np.eye(N.dim, dtype=np.int64)
    rels = [np.kron(am.astype(np.int64), en) - np.kron(em, an.astype(np.int64))
            for am, an in zip(M.actions, N.actions)]
    return fp.asmat(np.hstack(rels), p)


def tensor_product(M: FiniteModule, N: FiniteModule) -> tuple[FiniteModule, np.ndarray]:
    """M (x)_R N as a quotient of M (x)_k N; also returns the projection."""
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    p = M.p
    en = np.eye(N.dim, dtype=np.int64)
    big = FiniteModule(M.algebra, tuple(fp.asmat(np.kron(a.astype(np.int64), en), p) for a in M.actions))
    name = f"{M.name}(x){N.name}" if M.name and N.name else ""
    return quotient(big, tensor_relations(M, N), name)


def algebra_tensor(A: ArtinianAlgebra, B: ArtinianAlgebra) -> ArtinianAlgebra:
    """A (x)_k B as the monomial quotient on the disjoint union of variables."""
    if A.p != B.p:
        raise ValueError(f"prime mismatch: {A.p} vs {B.p}")
    names = list(A.ctx.names)
    for v in B.ctx.names:
        while v in names:
            v = v + "'"
        names.append(v)
    ctx = PolyContext(tuple(names))
    gens = [g + (0,) * B.n for g in A.ideal.gens] + [(0,) * A.n + g for g in B.ideal.gens]
    return ArtinianAlgebra(MonomialIdeal(ctx, tuple(gens)), A.p)


_TENSOR_CACHE: dict[tuple[int, int], tuple] = {}


def external_tensor(M: FiniteModule, N: FiniteModule, algebra: ArtinianAlgebra | None = None) -> FiniteModule:
    """M (x)_k N as a module over A (x)_k B, actions componentwise.

    Repeated calls with the same pair of algebras share one tensor algebra,
    so their outputs can be compared with each other.
    """
    A, B = M.algebra, N.algebra
    if algebra is None:
        key = (id(A), id(B))
        hit = _TENSOR_CACHE.get(key)
        if hit is None or hit[0] is not A or hit[1] is not B:
            hit = _TENSOR_CACHE[key] = (A, B, algebra_tensor(A, B))
        algebra = hit[2]
    em, en = np.eye(M.dim, dtype=np.int64), np.eye(N.dim, dtype=np.int64)
    acts = [np.kron(a.astype(np.int64), en) for a in M.actions] + \
           [np.kron(em, b.astype(np.int64)) for b in N.actions]
    degs = None
    if M.degrees is not None and N.degrees is not None:
        degs = tuple(a + b for a in M.degrees for b in N.degrees)
    name = f"{M.name}[x]{N.name}" if M.name and N.name else ""
    return FiniteModule(algebra, tuple(acts), degs, name)


def module_from_arrays(A: ArtinianAlgebra, actions: Sequence, degrees=None, name: str = "") -> FiniteModule:
    return FiniteModule(A, tuple(np.asarray(a, dtype=np.int64) for a in actions),
                        None if degrees is None else tuple(degrees), name)
