"""Monomial ideals in k[x_1, ..., x_n] with the standard grading.

Monomials are plain tuples of non-negative exponents.  A
:class:`MonomialIdeal` always stores its minimal generating set, sorted, so
equal ideals compare equal and hash alike.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Iterable, Sequence

import numpy as np

Monomial = tuple[int, ...]


class ContextMismatch(ValueError):
    """Raised when objects from different polynomial contexts are mixed."""


@dataclass(frozen=True)
class PolyContext:
    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(self.names) < 1:
            raise ValueError("a polynomial context needs at least one variable")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")

    @classmethod
    def standard(cls, n: int, prefix: str = "x") -> "PolyContext":
        if n <= 3 and prefix == "x":
            return cls(("x", "y", "z")[:n])
        return cls(tuple(f"{prefix}{i + 1}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.names)

    def variable(self, i: int, power: int = 1) -> Monomial:
        e = [0] * self.n
        e[i] = power
        return tuple(e)

    def one(self) -> Monomial:
        return (0,) * self.n

    def format(self, m: Monomial) -> str:
        parts = [v if e == 1 else f"{v}^{e}" for v, e in zip(self.names, m) if e]
        return " ".join(parts) if parts else "1"


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def degree(m: Monomial) -> int:
    return sum(m)


def support(m: Monomial) -> frozenset[int]:
    return frozenset(i for i, e in enumerate(m) if e)


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, d: int) -> np.ndarray:
    """All exponent vectors of total degree ``d`` in ``n`` variables, as rows."""
    rows = []
    for c in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in c:
            e[i] += 1
        rows.append(e)
    out = np.array(rows, dtype=np.int64).reshape(-1, n)
    out.setflags(write=False)
    return out


def _order(m: Monomial):
    return (sum(m), tuple(-e for e in m))


def _minimalize(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    uniq = sorted(set(gens), key=_order)
    if len(uniq) > 12:
        arr = np.array(uniq, dtype=np.int64)
        div = np.all(arr[:, None, :] <= arr[None, :, :], axis=2)
        np.fill_diagonal(div, False)
        redundant = div.any(axis=0)
        return tuple(m for m, r in zip(uniq, redundant) if not r)
    keep: list[Monomial] = []
    for m in uniq:
        if not any(divides(g, m) for g in keep):
            keep.append(m)
    return tuple(sorted(keep, key=_order))


@dataclass(frozen=True)
class MonomialIdeal:
    ctx: PolyContext
    gens: tuple[Monomial, ...]

    def __post_init__(self):
        for g in self.gens:
            if len(g) != self.ctx.n:
                raise ContextMismatch(f"monomial {g} does not live in {self.ctx.names}")
            if any(e < 0 for e in g):
                raise ValueError(f"negative exponent in {g}")
        object.__setattr__(self, "gens", _minimalize(tuple(map(tuple, self.gens))))

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, ctx: PolyContext) -> "MonomialIdeal":
        return cls(ctx, ())

    @classmethod
    def unit(cls, ctx: PolyContext) -> "MonomialIdeal":
        return cls(ctx, (ctx.one(),))

    @classmethod
    def maximal(cls, ctx: PolyContext) -> "MonomialIdeal":
        return cls(ctx, tuple(ctx.variable(i) for i in range(ctx.n)))

    @classmethod
    def from_support(cls, ctx: PolyContext, supp: Iterable[int]) -> "MonomialIdeal":
        return cls(ctx, tuple(ctx.variable(i) for i in sorted(supp)))

    # predicates -------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.gens == (self.ctx.one(),)

    @property
    def max_degree(self) -> int:
        return max((sum(g) for g in self.gens), default=0)

    def pure_power(self, i: int) -> int | None:
        """Least e with x_i^e in the ideal, or None."""
        best = None
        for g in self.gens:
            if all(e == 0 for j, e in enumerate(g) if j != i):
                best = g[i] if best is None else min(best, g[i])
        return best

    @property
    def is_artinian(self) -> bool:
        """True when S/I has finite length (a pure power of every variable lies in I)."""
        return all(self.pure_power(i) is not None for i in range(self.ctx.n))

    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.gens for e in g)

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.gens)

    def __contains__(self, m: Monomial) -> bool:
        return self.contains(tuple(m))

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def _check(self, other: "MonomialIdeal"):
        if self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx.names} vs {other.ctx.names}")

    # arithmetic -------------------------------------------------------
    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        return MonomialIdeal(self.ctx, self.gens + other.gens)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        return MonomialIdeal(self.ctx, tuple(mul(a, b) for a in self.gens for b in other.gens))

    def __pow__(self, k: int) -> "MonomialIdeal":
        return ideal_power(self, k)

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        return MonomialIdeal(self.ctx, tuple(lcm(a, b) for a in self.gens for b in other.gens))

    def colon_monomial(self, m: Monomial) -> "MonomialIdeal":
        return MonomialIdeal(
            self.ctx, tuple(tuple(a - c for a, c in zip(g, gcd(g, m))) for g in self.gens)
        )

    def colon(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        if other.is_zero:
            return MonomialIdeal.unit(self.ctx)
        out = MonomialIdeal.unit(self.ctx)
        for g in other.gens:
            out = out.intersect(self.colon_monomial(g))
        return out

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(self.ctx.format(g).replace(" ", "") for g in self.gens) + ")"

    __repr__ = __str__


def minimal_generators(gens: Iterable[Monomial], ctx: PolyContext | None = None) -> MonomialIdeal:
    """Minimal generating set of the ideal spanned by ``gens``.

    ``ctx`` is required when ``gens`` is empty (the zero ideal) and otherwise
    defaults to ``x1..xn``.
    """
    gens = [tuple(g) for g in gens]
    lengths = {len(g) for g in gens}
    if len(lengths) > 1:
        raise ContextMismatch(f"monomials of different lengths: {sorted(lengths)}")
    if ctx is None:
        if not gens:
            raise ValueError("a context is required for the zero ideal")
        ctx = PolyContext.standard(lengths.pop())
    return MonomialIdeal(ctx, tuple(gens))


@lru_cache(maxsize=4096)
def ideal_power(ideal: MonomialIdeal, k: int) -> MonomialIdeal:
    if k < 0:
        raise ValueError("negative power")
    if k == 0:
        return MonomialIdeal.unit(ideal.ctx)
    if k == 1:
        return ideal
    return ideal_power(ideal, k - 1) * ideal


def combine(kind: str, I: MonomialIdeal, J) -> MonomialIdeal:
    """Dispatch for sum, product, power, intersect and colon."""
    if kind == "sum":
        return I + J
    if kind == "product":
        return I * J
    if kind == "power":
        return ideal_power(I, int(J))
    if kind == "intersect":
        return I.intersect(J)
    if kind == "colon":
        return I.colon(J)
    raise ValueError(f"unknown combination {kind!r}")


def radical(I: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(I.ctx, tuple(tuple(1 if e else 0 for e in g) for g in I.gens))


def decomposition_radical(I: MonomialIdeal) -> MonomialIdeal:
    """Radical rebuilt from the irreducible components by replacing each exponent by 0/1."""
    comps = irreducible_decomposition(I)
    out = MonomialIdeal.unit(I.ctx)
    for c in comps:
        out = out.intersect(radical(c))
    return out


# decomposition ------------------------------------------------------------

def _split(gens: tuple[Monomial, ...], n: int) -> list[tuple[Monomial, ...]]:
    """Irreducible components (as generator tuples) of the ideal on ``gens``."""
    for g in gens:
        supp = [i for i, e in enumerate(g) if e]
        if len(supp) >= 2:
            i = supp[0]
            a = [0] * n
            a[i] = g[i]
            rest = list(g)
            rest[i] = 0
            others = tuple(h for h in gens if h != g)
            left = _minimalize(others + (tuple(a),))
            right = _minimalize(others + (tuple(rest),))
            return _split(left, n) + _split(right, n)
    return [gens]


def irreducible_decomposition(I: MonomialIdeal) -> list[MonomialIdeal]:
    """Irredundant decomposition of ``I`` into ideals generated by pure powers.

    Components are sorted by generator tuple for reproducible output.
    """
    if I.is_zero or I.is_unit:
        raise ValueError(f"irreducible decomposition needs a proper nonzero ideal, got {I}")
    comps = {MonomialIdeal(I.ctx, g) for g in _split(I.gens, I.ctx.n)}
    comps = sorted(comps, key=lambda c: c.gens)
    # drop components containing another one
    keep = [
        c for c in comps
        if not any(d != c and c.contains_ideal(d) for d in comps)
    ]
    return keep


@dataclass(frozen=True)
class VariablePrime:
    support: frozenset[int]
    minimal: bool = True

    def ideal(self, ctx: PolyContext) -> MonomialIdeal:
        if not self.support:
            return MonomialIdeal.zero(ctx)
        return MonomialIdeal.from_support(ctx, self.support)

    def names(self, ctx: PolyContext) -> list[str]:
        return [ctx.names[i] for i in sorted(self.support)]


@dataclass(frozen=True)
class PrimeData:
    primes: tuple[VariablePrime, ...]
    dim: int
    n: int

    @property
    def minimal_primes(self) -> tuple[VariablePrime, ...]:
        return tuple(P for P in self.primes if P.minimal)

    @property
    def embedded(self) -> tuple[VariablePrime, ...]:
        return tuple(P for P in self.primes if not P.minimal)

    @property
    def top_primes(self) -> tuple[VariablePrime, ...]:
        """Minimal primes P with dim S/P = dim S/I (for n variables, |P| = n - dim)."""
        return tuple(P for P in self.minimal_primes if len(P.support) == self.n - self.dim)


def associated_primes(I: MonomialIdeal) -> PrimeData:
    if I.is_unit:
        raise ValueError("the unit ideal has no associated primes")
    n = I.ctx.n
    if I.is_zero:
        return PrimeData((VariablePrime(frozenset()),), n, n)
    supports = {frozenset(i for g in c.gens for i in support(g)) for c in irreducible_decomposition(I)}
    supports = sorted(supports, key=lambda s: (len(s), sorted(s)))
    primes = tuple(
        VariablePrime(s, minimal=not any(t < s for t in supports)) for s in supports
    )
    dim = n - min(len(P.support) for P in primes if P.minimal)
    return PrimeData(primes, dim, n)


def krull_dimension(I: MonomialIdeal) -> int:
    return associated_primes(I).dim


def localize(I: MonomialIdeal, P: VariablePrime) -> MonomialIdeal:
    """Localization of S/I at a monomial prime, in the variables of P.

    Variables outside P become units, so their exponents are erased.
    """
    if not P.support:
        raise ValueError("cannot localize at the zero prime in a variable context")
    idx = sorted(P.support)
    ctx = PolyContext(tuple(I.ctx.names[i] for i in idx))
    gens = tuple(tuple(g[i] for i in idx) for g in I.gens)
    out = MonomialIdeal(ctx, gens)
    if out.is_unit:
        raise ValueError(f"localizing {I} at {P.names(I.ctx)} gives the zero ring")
    return out


# counting -----------------------------------------------------------------

def _in_ideal_mask(points: np.ndarray, gens: Sequence[Monomial]) -> np.ndarray:
    if not len(gens):
        return np.zeros(len(points), dtype=bool)
    g = np.asarray(gens, dtype=np.int64)
    return np.any(np.all(points[:, None, :] >= g[None, :, :], axis=2), axis=1)


def standard_monomial_count(I: MonomialIdeal, d: int) -> int:
    """Number of degree-``d`` monomials outside ``I``."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    mons = monomials_of_degree(I.ctx.n, d)
    return int(len(mons) - _in_ideal_mask(mons, I.gens).sum())


def standard_monomials(I: MonomialIdeal) -> list[Monomial]:
    """All monomials outside an Artinian ideal, sorted by (degree, exponents reversed)."""
    bounds = [I.pure_power(i) for i in range(I.ctx.n)]
    if any(b is None for b in bounds):
        raise ValueError(f"{I} is not Artinian: infinitely many standard monomials")
    grid = np.array(list(itertools.product(*(range(b) for b in bounds))), dtype=np.int64)
    grid = grid.reshape(-1, I.ctx.n)
    outside = grid[~_in_ideal_mask(grid, I.gens)]
    mons = [tuple(int(e) for e in row) for row in outside]
    return sorted(mons, key=lambda m: (sum(m), tuple(-e for e in m)))


@lru_cache(maxsize=65536)
def colength(I: MonomialIdeal) -> int:
    """dim_k S/I for an Artinian monomial ideal."""
    if I.is_unit:
        return 0
    bounds = [I.pure_power(i) for i in range(I.ctx.n)]
    if any(b is None for b in bounds):
        raise ValueError(f"{I} is not Artinian")
    total = prod(bounds)
    grid = np.indices(bounds).reshape(I.ctx.n, -1).T
    return int(total - _in_ideal_mask(grid, I.gens).sum())


# polarization ---------------------------------------------------------------

@dataclass(frozen=True)
class Polarization:
    source: MonomialIdeal
    ctx: PolyContext
    ideal: MonomialIdeal
    pairs: tuple[tuple[int, int], ...]
    origin: tuple[tuple[int, int], ...]  # polarized variable -> (i, j)

    def depolarize_monomial(self, m: Monomial) -> Monomial:
        e = [0] * self.source.ctx.n
        for k, ek in enumerate(m):
            e[self.origin[k][0]] += ek
        return tuple(e)

    def depolarize(self) -> MonomialIdeal:
        """Image of the polarized ideal after identifying x_{i,j} with x_{i,1}."""
        return MonomialIdeal(self.source.ctx, tuple(self.depolarize_monomial(g) for g in self.ideal.gens))

    def differences(self) -> list[tuple[str, str]]:
        return [(self.ctx.names[a], self.ctx.names[b]) for a, b in self.pairs]


def polarize(I: MonomialIdeal) -> Polarization:
    if I.is_unit:
        raise ValueError("cannot polarize the unit ideal")
    n = I.ctx.n
    t = [max([g[i] for g in I.gens] + [1]) for i in range(n)]
    names, origin, index = [], [], {}
    for i in range(n):
        for j in range(t[i]):
            index[(i, j)] = len(names)
            names.append(I.ctx.names[i] if t[i] == 1 else f"{I.ctx.names[i]}_{j + 1}")
            origin.append((i, j))
    ctx = PolyContext(tuple(names))
    gens = []
    for g in I.gens:
        e = [0] * len(names)
        for i, gi in enumerate(g):
            for j in range(gi):
                e[index[(i, j)]] = 1
        gens.append(tuple(e))
    pairs = tuple((index[(i, j)], index[(i, 0)]) for i in range(n) for j in range(1, t[i]))
    return Polarization(I, ctx, MonomialIdeal(ctx, tuple(gens)), pairs, tuple(origin))


def enumerate_ideals(n: int, max_degree: int, ctx: PolyContext | None = None):
    """Every nonzero proper monomial ideal of k[x_1..x_n] whose minimal generators
    have degree <= ``max_degree``, in a fixed order."""
    ctx = ctx or PolyContext.standard(n)
    mons = [m for m in all_monomials_up_to(n, max_degree) if sum(m)]

    def rec(i, chosen):
        if i == len(mons):
            if chosen:
                yield MonomialIdeal(ctx, tuple(chosen))
            return
        yield from rec(i + 1, chosen)
        m = mons[i]
        if not any(divides(c, m) or divides(m, c) for c in chosen):
            yield from rec(i + 1, chosen + [m])

    yield from rec(0, [])


def all_monomials_up_to(n: int, dmax: int) -> list[Monomial]:
    out = []
    for d in range(dmax + 1):
        out.extend(tuple(int(e) for e in row) for row in monomials_of_degree(n, d))
    return out


def decomposition_check(I: MonomialIdeal, d_max: int | None = None) -> dict:
    """Membership in I against membership in every irreducible component, for all
    monomials of degree <= d_max (default 2 * max generator degree), plus the
    radical computed from supports against the one rebuilt from the components."""
    comps = irreducible_decomposition(I)
    d_max = 2 * I.max_degree if d_max is None else d_max
    pts = np.array(all_monomials_up_to(I.ctx.n, d_max), dtype=np.int64)
    inside = _in_ideal_mask(pts, I.gens)
    both = np.logical_and.reduce([_in_ideal_mask(pts, c.gens) for c in comps])
    mismatches = [tuple(int(e) for e in pts[k]) for k in np.nonzero(inside != both)[0]]
    rad_ok = radical(I) == decomposition_radical(I)
    return {"components": len(comps), "tested": int(len(pts)), "mismatches": mismatches[:5],
            "radical_ok": rad_ok, "check": "pass" if not mismatches and rad_ok else "fail"}
