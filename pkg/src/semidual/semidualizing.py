"""Semidualizing certification, isomorphism testing and the Betti-number checks."""
from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass, field

import numpy as np

from . import fp
from .artinian import (
    ArtinianAlgebra,
    FiniteModule,
    cokernel,
    hom_basis,
    hom_module,
    matlis_dual,
    quotient,
    regular_module,
    tensor_product,
    tensor_relations,
)
from .monomial import MonomialIdeal, PolyContext, divides
from .resolution import betti_numbers, ext_dim, resolution, tor_dim

DEFAULT_I_MAX = 8
ISO_EXHAUSTIVE_LIMIT = 10 ** 6
ISO_RANDOM_TRIALS = 200
DEFAULT_SEED = 20240601


class PreconditionError(ValueError):
    """The hypothesis of a check does not hold for the given input."""


_STD: "weakref.WeakKeyDictionary[ArtinianAlgebra, tuple]" = weakref.WeakKeyDictionary()


def standard_modules(A: ArtinianAlgebra) -> tuple[FiniteModule, FiniteModule]:
    """The regular module R and the dualizing module D = Hom_k(R, k), shared per algebra."""
    if A not in _STD:
        R = regular_module(A)
        _STD[A] = (R, matlis_dual(R))
    return _STD[A]


@dataclass(frozen=True)
class Verdict:
    holds: bool
    cutoff: int | None = None
    witness: str | None = None

    def __str__(self) -> str:
        if not self.holds:
            return f"no({self.witness})"
        return "yes" if self.cutoff is None else f"yes-up-to({self.cutoff})"

    @property
    def tag(self) -> str:
        return str(self)


def homothety_witness(M: FiniteModule) -> str | None:
    """None when R -> Hom(M, M) is bijective, otherwise a description of the failure."""
    A = M.algebra
    if M.dim == 0:
        return "zero module"
    name = M.name or "M"
    h = hom_basis(M, M).shape[0]
    images = M.basis_actions.reshape(A.dim, -1).T
    r = fp.rank(images, A.p)
    if r < A.dim:
        return (f"homothety not injective: dim Hom({name},{name})={h}, "
                f"image dim {r} < {A.dim}")
    if h > r:
        return f"homothety not surjective: dim Hom({name},{name})={h} > {A.dim}"
    return None


def is_semidualizing(M: FiniteModule, i_max: int = DEFAULT_I_MAX) -> Verdict:
    """Homothety bijective and Ext^i(M, M) = 0 for 1 <= i <= i_max.

    A free module is certified outright; anything else carries the cutoff.
    """
    if i_max < 1:
        raise ValueError("i_max must be at least 1")
    w = homothety_witness(M)
    if w:
        return Verdict(False, witness=w)
    if resolution(M, 1).betti[1] == 0:
        return Verdict(True)  # free: Ext vanishes in every positive degree
    for i in range(1, i_max + 1):
        e = ext_dim(M, M, i)
        if e:
            return Verdict(False, witness=f"dim Ext^{i}(M,M) = {e}")
    return Verdict(True, cutoff=i_max)


# isomorphism ------------------------------------------------------------------

@dataclass
class IsoResult:
    isomorphic: bool
    method: str
    certain: bool = True
    witness: np.ndarray | None = field(default=None, repr=False)

    @property
    def label(self) -> str:
        if self.isomorphic:
            return "isomorphic"
        return "not-isomorphic" if self.certain else "probably-not-isomorphic"


def _batch_invertible(mats: np.ndarray, p: int) -> np.ndarray:
    """Invertibility of a stack of square matrices over F_p, vectorized over the stack."""
    a = np.asarray(mats, dtype=np.int64) % p
    B, n, _ = a.shape
    ok = np.ones(B, dtype=bool)
    inv_table = np.array([0] + [pow(x, p - 2, p) for x in range(1, p)], dtype=np.int64)
    idx = np.arange(B)
    for c in range(n):
        sub = a[:, c:, c]
        has = sub != 0
        ok &= has.any(axis=1)
        piv = c + np.argmax(has, axis=1)
        rows_c = a[idx, c].copy()
        a[idx, c] = a[idx, piv]
        a[idx, piv] = rows_c
        pv = inv_table[a[:, c, c]]
        a[:, c] = (a[:, c] * pv[:, None]) % p
        factors = a[:, c + 1:, c].copy()
        a[:, c + 1:] = (a[:, c + 1:] - factors[:, :, None] * a[:, c, None, :]) % p
    return ok


def iso_search(M: FiniteModule, N: FiniteModule, rng: np.random.Generator | None = None) -> IsoResult:
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    if M.invariants() != N.invariants():
        return IsoResult(False, "invariants")
    if M.dim == 0:
        return IsoResult(True, "zero")
    p = M.p
    basis = hom_basis(M, N).astype(np.int64)
    r = basis.shape[0]
    if r == 0:
        return IsoResult(False, "no nonzero maps")

    def first_invertible(coeffs):
        mats = np.tensordot(coeffs, basis, axes=(1, 0)) % p
        hit = np.nonzero(_batch_invertible(mats, p))[0]
        return mats[hit[0]] if hit.size else None

    # cheap deterministic candidates: basis elements and pairwise sums
    pairs = [np.eye(r, dtype=np.int64)]
    if r > 1:
        ij = np.array(list(itertools.combinations(range(r), 2)))
        s = np.zeros((len(ij), r), dtype=np.int64)
        s[np.arange(len(ij)), ij[:, 0]] = 1
        s[np.arange(len(ij)), ij[:, 1]] = 1
        pairs.append(s)
    w = first_invertible(np.vstack(pairs))
    if w is not None:
        return IsoResult(True, "basis", witness=w)
    rng = rng if rng is not None else np.random.default_rng(DEFAULT_SEED)
    w = first_invertible(rng.integers(0, p, size=(ISO_RANDOM_TRIALS, r)))
    if w is not None:
        return IsoResult(True, "random", witness=w)
    if p ** r <= ISO_EXHAUSTIVE_LIMIT:
        chunk = 1 << 15
        total = p ** r
        digits = p ** np.arange(r, dtype=np.int64)
        for start in range(1, total, chunk):
            codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
            coeffs = (codes[:, None] // digits[None, :]) % p
            w = first_invertible(coeffs)
            if w is not None:
                return IsoResult(True, "exhaustive", witness=w)
        return IsoResult(False, "exhaustive")
    return IsoResult(False, "randomized", certain=False)


def iso_test(M: FiniteModule, N: FiniteModule, rng: np.random.Generator | None = None) -> bool:
    return iso_search(M, N, rng).isomorphic


# dagger duality ---------------------------------------------------------------

@dataclass
class Report:
    name: str
    checks: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)
    verdict: str = "pass"

    def to_json(self) -> dict:
        return {"check": self.name, "verdict": self.verdict, "checks": self.checks, "data": self.data}


def _pass_fail(ok: bool) -> str:
    return "pass" if ok else "fail"


def dagger_checks(C: FiniteModule, i_max: int = 6) -> Report:
    """Ext(C, D) vanishing, C^dagger semidualizing, biduality, Tor vanishing,
    evaluation isomorphism and the C^dagger = R implies C = D rule."""
    A = C.algebra
    p = A.p
    R, D = standard_modules(A)
    rep = Report("dagger")
    v = is_semidualizing(C, i_max)
    if not v.holds:
        raise PreconditionError(f"C is not semidualizing: {v}")
    ext_cd = [ext_dim(C, D, i) for i in range(1, i_max + 1)]
    rep.checks["ext_C_D_vanishes"] = _pass_fail(not any(ext_cd))
    Cd = hom_module(C, D)
    maps = Cd.maps.astype(np.int64)  # (r, dim D, dim C)
    r = Cd.dim
    rep.data["dim_C_dagger"] = r
    vd = is_semidualizing(Cd, i_max)
    rep.checks["dagger_semidualizing"] = str(vd)

    # biduality: c -> (u -> sum_b u_b psi_b(c))
    deltas = maps.transpose(2, 1, 0)  # (dim C, dim D, r)
    linear = all(
        not np.any((fp.matmul(dc, ad_c, p).astype(np.int64) - fp.matmul(ad_d, dc, p)) % p)
        for dc in deltas for ad_c, ad_d in zip(Cd.actions, D.actions)
    )
    bidual_dim = hom_basis(Cd, D).shape[0]
    inj = fp.rank(deltas.reshape(C.dim, -1).T, p) == C.dim
    rep.checks["biduality_iso"] = _pass_fail(linear and inj and bidual_dim == C.dim)

    tors = [tor_dim(C, Cd, i) for i in range(1, i_max + 1)]
    rep.checks["tor_C_dagger_vanishes"] = _pass_fail(not any(tors))

    # evaluation C (x) C^dagger -> D, column index a * r + b
    ev = maps.transpose(1, 2, 0).reshape(D.dim, C.dim * r)
    rels = tensor_relations(C, Cd)
    kills_relations = not np.any(fp.matmul(ev, rels, p))
    T, _ = tensor_product(C, Cd)
    rep.checks["evaluation_iso"] = _pass_fail(
        kills_relations and fp.rank(ev, p) == D.dim and T.dim == D.dim
    )
    rep.data["dim_tensor"] = T.dim

    dagger_is_R = iso_test(Cd, R)
    rep.data["dagger_iso_R"] = dagger_is_R
    if dagger_is_R:
        rep.checks["dagger_R_implies_C_D"] = _pass_fail(iso_test(C, D))
    ok = all(val == "pass" or str(val).startswith("yes") for val in rep.checks.values())
    rep.verdict = _pass_fail(ok)
    return rep


def dagger(C: FiniteModule) -> FiniteModule:
    return hom_module(C, standard_modules(C.algebra)[1])


def convolve(a: list[int], b: list[int], upto: int) -> list[int]:
    return [sum(a[j] * b[i - j] for j in range(i + 1)) for i in range(upto + 1)]


def betti_convolution_check(C: FiniteModule, L: int = 4) -> Report:
    _, D = standard_modules(C.algebra)
    Cd = dagger(C)
    bd, bc, bcd = betti_numbers(D, L), betti_numbers(C, L), betti_numbers(Cd, L)
    conv = convolve(bc, bcd, L)
    rep = Report("betti_convolution", data={"beta_D": bd, "beta_C": bc, "beta_C_dagger": bcd,
                                            "convolution": conv})
    rep.checks["equal"] = _pass_fail(bd == conv)
    rep.verdict = rep.checks["equal"]
    return rep


def beta_inequality_check(C: FiniteModule) -> Report:
    A = C.algebra
    R, _ = standard_modules(A)
    if iso_test(C, R):
        raise PreconditionError("C is isomorphic to R; the inequality needs C not free")
    if C.dim != A.dim:
        raise PreconditionError(f"len(C) = {C.dim} differs from len(R) = {A.dim}")
    b = betti_numbers(C, 1)
    rep = Report("beta_inequality", data={"beta0": b[0], "beta1": b[1]})
    rep.checks["beta1_ge_beta0"] = _pass_fail(b[1] >= b[0])
    rep.verdict = rep.checks["beta1_ge_beta0"]
    return rep


def cor_betti_check(A: ArtinianAlgebra, C: FiniteModule | None = None, **search_kwargs) -> Report:
    """beta_1(D) >= 2 beta_0(D) given a semidualizing C with R != C != D."""
    R, D = standard_modules(A)
    rep = Report("cor_betti")
    if C is None:
        found = classification_search(A, **search_kwargs)
        third = [c for c in found.classes if c.label not in ("R", "D")]
        if not third:
            rep.verdict = "not-applicable"
            rep.data["classes"] = [c.label for c in found.classes]
            return rep
        C = third[0].module
    else:
        if not is_semidualizing(C, search_kwargs.get("i_max", 6)).holds or iso_test(C, R) or iso_test(C, D):
            rep.verdict = "not-applicable"
            return rep
    b = betti_numbers(D, 1)
    rep.data.update({"beta0_D": b[0], "beta1_D": b[1], "witness": C.name})
    rep.checks["beta1_ge_2beta0"] = _pass_fail(b[1] >= 2 * b[0])
    rep.verdict = rep.checks["beta1_ge_2beta0"]
    return rep


# classification search ------------------------------------------------------------

@dataclass
class FoundClass:
    label: str
    module: FiniteModule
    source: str
    verdict: str


@dataclass
class SearchResult:
    classes: list[FoundClass]
    stats: dict

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.classes]

    def to_json(self) -> dict:
        return {"classes": [{"label": c.label, "source": c.source, "verdict": c.verdict,
                             "dim": c.module.dim, "beta0": c.module.num_generators}
                            for c in self.classes],
                "stats": self.stats}


def cyclic_quotient(A: ArtinianAlgebra, J: MonomialIdeal) -> FiniteModule:
    """R/J for a monomial ideal J of the ambient polynomial ring."""
    R, _ = standard_modules(A)
    cols = [A.index[m] for m in A.basis if J.contains(m)]
    sub = np.eye(A.dim, dtype=np.int64)[:, cols]
    mod, _ = quotient(R, sub, f"R/{J}")
    return mod


def monomial_ideals_of(A: ArtinianAlgebra, limit: int = 4096):
    """Monomial ideals J (as antichains of non-unit basis monomials), J = 0 first."""
    cand = [m for m in A.basis if sum(m)]
    yield MonomialIdeal.zero(A.ctx)
    count = 1

    def rec(i, chosen):
        nonlocal count
        if count >= limit:
            return
        if i == len(cand):
            if chosen:
                count += 1
                yield MonomialIdeal(A.ctx, tuple(chosen))
            return
        yield from rec(i + 1, chosen)
        m = cand[i]
        if not any(divides(c, m) or divides(m, c) for c in chosen):
            yield from rec(i + 1, chosen + [m])

    yield from rec(0, [])


def variable_blocks(A: ArtinianAlgebra) -> list[tuple[int, ...]]:
    """Finest partition of the variables such that every generator of the
    ideal uses a single block; A is then the tensor product of the block algebras."""
    parent = list(range(A.n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in A.ideal.gens:
        vs = [i for i, e in enumerate(g) if e]
        for v in vs[1:]:
            parent[find(v)] = find(vs[0])
    groups: dict[int, list[int]] = {}
    for i in range(A.n):
        groups.setdefault(find(i), []).append(i)
    return sorted(tuple(g) for g in groups.values())


def block_algebra(A: ArtinianAlgebra, block: tuple[int, ...]) -> ArtinianAlgebra:
    ctx = PolyContext(tuple(A.ctx.names[i] for i in block))
    gens = tuple(tuple(g[i] for i in block) for g in A.ideal.gens
                 if all(g[i] == 0 for i in range(A.n) if i not in block))
    return ArtinianAlgebra(MonomialIdeal(ctx, gens), A.p)


def block_tensor(A: ArtinianAlgebra, blocks, mods, name: str = "") -> FiniteModule:
    """Tensor product over k of modules over the block algebras, as an A-module."""
    dims = [m.dim for m in mods]
    acts: list[np.ndarray | None] = [None] * A.n
    for j, (block, M) in enumerate(zip(blocks, mods)):
        left = int(np.prod(dims[:j], dtype=np.int64))
        right = int(np.prod(dims[j + 1:], dtype=np.int64))
        for local, v in enumerate(block):
            a = M.actions[local].astype(np.int64)
            acts[v] = np.kron(np.kron(np.eye(left, dtype=np.int64), a), np.eye(right, dtype=np.int64))
    return FiniteModule(A, tuple(acts), None, name)


def block_seeds(A: ArtinianAlgebra) -> list[FiniteModule]:
    """Products of R or D over each variable block, skipping the all-R and all-D choices."""
    blocks = variable_blocks(A)
    if len(blocks) < 2:
        return []
    pieces = [standard_modules(block_algebra(A, b)) for b in blocks]
    out = []
    for choice in itertools.product((0, 1), repeat=len(blocks)):
        if len(set(choice)) < 2:
            continue
        mods = [pieces[j][c] for j, c in enumerate(choice)]
        label = "(x)".join(("R" if c == 0 else "D") + "_" + "".join(A.ctx.names[i] for i in b)
                           for c, b in zip(choice, blocks))
        out.append(block_tensor(A, blocks, mods, label))
    return out


def classification_search(A: ArtinianAlgebra, trials: int = 500, b_max: int = 3, i_max: int = 6,
                          seed: int = DEFAULT_SEED, extra_seeds=()) -> SearchResult:
    """Bucket every semidualizing candidate found into isomorphism classes.

    Candidates are the seeds R, D, the cyclic quotients R/J, the mixed R/D
    products over a splitting of the variables into independent blocks, any
    ``extra_seeds``, and ``trials`` cokernels of uniformly random b x b'
    matrices over A.
    Evidence only: a missing class is not a proof of absence.
    """
    rng = np.random.default_rng(seed)
    R, D = standard_modules(A)
    classes: list[FoundClass] = []
    stats = {"candidates": 0, "length_filtered": 0, "homothety_failed": 0, "ext_failed": 0,
             "semidualizing": 0, "cyclic_semidualizing_not_R": 0}

    def consider(M: FiniteModule, source: str, label: str | None = None):
        stats["candidates"] += 1
        if M.dim != A.dim:
            stats["length_filtered"] += 1
            return
        v = is_semidualizing(M, i_max)
        if not v.holds:
            key = "homothety_failed" if "homothety" in (v.witness or "") else "ext_failed"
            stats[key] += 1
            return
        stats["semidualizing"] += 1
        if M.num_generators == 1 and not iso_test(M, R, rng):
            stats["cyclic_semidualizing_not_R"] += 1
        for c in classes:
            if iso_test(M, c.module, rng):
                return
        name = label or f"C{sum(1 for c in classes if c.label not in ('R', 'D')) + 1}"
        classes.append(FoundClass(name, M, source, str(v)))

    consider(R, "seed", "R")
    consider(D, "seed", "D")
    for J in monomial_ideals_of(A):
        if A.dim - sum(1 for m in A.basis if J.contains(m)) != A.dim:
            stats["candidates"] += 1
            stats["length_filtered"] += 1
            continue
        consider(cyclic_quotient(A, J), "cyclic")
    for M in block_seeds(A):
        consider(M, "block-product", M.name)
    for M in extra_seeds:
        consider(M, "extra-seed", M.name or None)
    for _ in range(trials):
        b = int(rng.integers(1, b_max + 1))
        bp = int(rng.integers(1, b_max + 1))
        mat = rng.integers(0, A.p, size=(b, bp, A.dim))
        try:
            M = cokernel(A, mat)
        except ValueError:
            continue
        consider(M, "random")
    return SearchResult(classes, stats)
