"""Hilbert functions, Hilbert polynomials and Hilbert-Samuel multiplicities
of monomial quotient rings R = k[x]/I.

All arithmetic is exact: integer counts and ``fractions.Fraction``
polynomial coefficients.  Multiplicities use the normalization
``e = (d-1)! * leading coefficient``; in dimension 0 the multiplicity is the
length of the ring.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

import numpy as np

from .monomial import (
    MonomialIdeal,
    PolyContext,
    _in_ideal_mask,
    associated_primes,
    colength,
    ideal_power,
    localize,
    polarize,
    radical,
    standard_monomial_count,
)

DEFAULT_WINDOW = 3
HARD_CAP = 200


class NotStabilized(RuntimeError):
    """The values never settle on a polynomial inside the computed range; increase d_max."""


class NotPrimary(ValueError):
    """J is not primary to the maximal ideal modulo I."""


class NotCohenMacaulay(ValueError):
    pass


Polynomial = tuple[Fraction, ...]  # ascending coefficients


def poly_eval(poly: Sequence[Fraction], j) -> Fraction:
    out = Fraction(0)
    for c in reversed(poly):
        out = out * j + c
    return out


def poly_str(poly: Sequence[Fraction], var: str = "j") -> str:
    terms = []
    for k, c in enumerate(poly):
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        coef = str(c)
        terms.append(coef if not mono else (mono if c == 1 else f"{coef}*{mono}"))
    return " + ".join(reversed(terms)) if terms else "0"


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> Polynomial:
    """Lagrange interpolation with exact rational coefficients."""
    k = len(xs)
    coeffs = [Fraction(0)] * k
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m, xm in enumerate(xs):
            if m == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xm * basis[t + 1]
            denom *= xi - xm
        for t in range(k):
            coeffs[t] += yi * basis[t] / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class HilbertData:
    values: tuple[int, ...]
    polynomial: Polynomial | None = None
    dim: int | None = None
    multiplicity: int | None = None
    stable_from: int | None = None
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "values": list(self.values),
            "polynomial": None if self.polynomial is None else [str(c) for c in self.polynomial],
            "polynomial_str": None if self.polynomial is None else poly_str(self.polynomial),
            "dim": self.dim,
            "multiplicity": self.multiplicity,
            "stable_from": self.stable_from,
        }


def fit_polynomial(values: Sequence[int], window: int = DEFAULT_WINDOW) -> HilbertData:
    """Fit the eventual polynomial of a Hilbert-type sequence.

    The smallest k whose k-th finite differences are constant over the last
    ``window`` entries fixes the degree.  A trailing zero is terminal: a
    standard graded count that vanishes once stays zero, so such sequences
    are treated as dimension 0 with multiplicity equal to the total.
    """
    values = tuple(int(v) for v in values)
    if not values:
        raise NotStabilized("no values")
    if values[-1] == 0:
        first_zero = values.index(0)
        if any(values[first_zero:]):
            raise ValueError("sequence revives after a zero")
        return HilbertData(values, (Fraction(0),), 0, sum(values), first_zero)
    diffs = list(values)
    for k in range(len(values)):
        if len(diffs) < window:
            break
        tail = diffs[-window:]
        if all(t == tail[0] for t in tail):
            npts = k + window
            xs = list(range(len(values) - npts, len(values)))
            poly = _interpolate(xs[-(k + 1):], [values[x] for x in xs[-(k + 1):]])
            if any(poly_eval(poly, x) != values[x] for x in xs):
                raise AssertionError("finite-difference fit disagrees with the window")
            start = len(values) - npts
            while start > 0 and poly_eval(poly, start - 1) == values[start - 1]:
                start -= 1
            deg = len(poly) - 1
            mult = poly[-1] * factorial(deg)
            if mult.denominator != 1 or mult <= 0:
                raise AssertionError(f"non-integral multiplicity {mult}")
            return HilbertData(values, poly, deg + 1, int(mult), start)
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    raise NotStabilized(f"no stabilization within {len(values)} terms; increase d_max")


# Hilbert functions ------------------------------------------------------------

def hilbert_function(I: MonomialIdeal, d_max: int) -> HilbertData:
    """Values H(0..d_max) of S/I, no fitting."""
    if d_max < 0:
        raise ValueError("d_max must be non-negative")
    return HilbertData(tuple(standard_monomial_count(I, d) for d in range(d_max + 1)))


def regularity_bound(I: MonomialIdeal) -> int:
    """Degree from which H(S/I) is polynomial (Taylor complex bound)."""
    if I.is_zero:
        return 0
    lcm_deg = sum(max(g[i] for g in I.gens) for i in range(I.ctx.n))
    return max(lcm_deg - I.ctx.n + 1, 0)


def hilbert_polynomial(I: MonomialIdeal, window: int = DEFAULT_WINDOW) -> HilbertData:
    """Hilbert function computed far enough to be provably polynomial, then fitted."""
    if I.is_unit:
        return HilbertData((0,), (Fraction(0),), 0, 0, 0)
    w = max(window, I.ctx.n + 1)
    d_max = regularity_bound(I) + w + 1
    return fit_polynomial(hilbert_function(I, d_max).values, w)


def is_primary_to_maximal(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    return radical(J + I) == MonomialIdeal.maximal(I.ctx)


def _least_power_inside(I: MonomialIdeal, J: MonomialIdeal) -> int:
    K = J + I
    m = MonomialIdeal.maximal(I.ctx)
    c = 1
    while not K.contains_ideal(ideal_power(m, c)):
        c += 1
    return c


def hilbert_samuel(I: MonomialIdeal, J: MonomialIdeal, j_max: int | None = None,
                   window: int = DEFAULT_WINDOW) -> HilbertData:
    """H(j) = len(J^j R / J^{j+1} R) for R = S/I and its multiplicity e(J; R).

    Lengths are colengths of the Artinian monomial ideals J^j + I.  The range
    escalates until a fit holds and survives ``window`` extra terms.
    """
    if I.ctx != J.ctx:
        raise ValueError("I and J live in different contexts")
    if I.is_unit:
        raise ValueError("R is the zero ring")
    if not is_primary_to_maximal(I, J):
        raise NotPrimary(f"{J} is not primary to the maximal ideal modulo {I}")
    c = _least_power_inside(I, J)
    w = max(window, I.ctx.n + 1)
    j_max = j_max if j_max is not None else 2 * I.ctx.n + w
    lengths = [0]

    def extend(upto):
        while len(lengths) <= upto + 1:
            lengths.append(colength(ideal_power(J, len(lengths)) + I))

    while True:
        if j_max > HARD_CAP:
            raise NotStabilized(f"Hilbert-Samuel function did not stabilize by j = {HARD_CAP}")
        extend(j_max + w)
        values = [lengths[j + 1] - lengths[j] for j in range(j_max + 1)]
        try:
            fit = fit_polynomial(values, w)
        except NotStabilized:
            j_max *= 2
            continue
        check = [lengths[j + 1] - lengths[j] for j in range(j_max + 1, j_max + w + 1)]
        if fit.polynomial is not None and all(
            poly_eval(fit.polynomial, j) == v for j, v in zip(range(j_max + 1, j_max + w + 1), check)
        ):
            return HilbertData(fit.values, fit.polynomial, fit.dim, fit.multiplicity,
                               fit.stable_from, (f"m^{c} lies in J + I",))
        j_max *= 2


def multiplicity(I: MonomialIdeal, J: MonomialIdeal | None = None) -> int:
    J = MonomialIdeal.maximal(I.ctx) if J is None else J
    return hilbert_samuel(I, J).multiplicity


# additivity -------------------------------------------------------------------

def restrict_to_quotient(J: MonomialIdeal, keep: Sequence[int]) -> MonomialIdeal:
    """Image of J in k[x_keep] = S/(x_i : i not in keep)."""
    ctx = PolyContext(tuple(J.ctx.names[i] for i in keep))
    drop = set(range(J.ctx.n)) - set(keep)
    gens = tuple(tuple(g[i] for i in keep) for g in J.gens if not any(g[i] for i in drop))
    return MonomialIdeal(ctx, gens)


@dataclass
class AdditivityReport:
    lhs: int
    rhs: int
    terms: list[dict]
    dim: int

    @property
    def check(self) -> str:
        return "pass" if self.lhs == self.rhs else "fail"

    def to_json(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "dim": self.dim, "terms": self.terms,
                "check": self.check}


def additivity_check(I: MonomialIdeal, J: MonomialIdeal | None = None) -> AdditivityReport:
    """Compare e(J;R) with the sum over top-dimensional minimal primes P of
    len(R_P) * e(J; R/P)."""
    J = MonomialIdeal.maximal(I.ctx) if J is None else J
    hs = hilbert_samuel(I, J)
    pd = associated_primes(I)
    terms, rhs = [], 0
    for P in pd.top_primes:
        length = colength(localize(I, P)) if P.support else 1
        keep = [i for i in range(I.ctx.n) if i not in P.support]
        if keep:
            e_quot = hilbert_samuel(MonomialIdeal.zero(PolyContext(tuple(I.ctx.names[i] for i in keep))),
                                    restrict_to_quotient(J, keep)).multiplicity
        else:
            e_quot = 1  # R/P = k
        terms.append({"prime": P.names(I.ctx), "length": length, "e_quotient": e_quot})
        rhs += length * e_quot
    return AdditivityReport(hs.multiplicity, rhs, terms, pd.dim)


# canonical module -----------------------------------------------------------

@dataclass(frozen=True)
class RationalSeries:
    numerator: tuple[int, ...]
    pole_order: int

    def expand(self, terms: int) -> list[int]:
        d = self.pole_order
        out = []
        for j in range(terms):
            out.append(sum(q * comb(j - k + d - 1, d - 1) for k, q in enumerate(self.numerator)
                           if j - k >= 0) if d > 0 else
                       (self.numerator[j] if j < len(self.numerator) else 0))
        return out


def hilbert_series(I: MonomialIdeal) -> RationalSeries:
    """HS_{S/I}(t) = Q(t)/(1-t)^d with d = dim S/I."""
    d = associated_primes(I).dim
    L = sum(max([g[i] for g in I.gens] + [0]) for i in range(I.ctx.n))
    N = L + d + DEFAULT_WINDOW
    hf = hilbert_function(I, N).values
    q = list(hf)
    for _ in range(d):
        q = [q[0]] + [b - a for a, b in zip(q, q[1:])]
    if any(q[L + 1:]):
        raise AssertionError("Hilbert series numerator exceeds the Taylor degree bound")
    q = q[:L + 1]
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    return RationalSeries(tuple(q), d)


def is_certified_cm(I: MonomialIdeal) -> bool:
    """Cohen-Macaulay certificate available in dimension <= 1: no embedded primes."""
    pd = associated_primes(I)
    if pd.dim > 1:
        raise ValueError("no certificate beyond dimension 1")
    return not pd.embedded


@dataclass
class CanonicalReport:
    e_canonical: int
    e_ring: int
    numerator_ring: tuple[int, ...]
    numerator_canonical: tuple[int, ...]
    hf_canonical: tuple[int, ...]
    dim: int

    @property
    def check(self) -> str:
        return "pass" if self.e_canonical == self.e_ring else "fail"

    def to_json(self) -> dict:
        return {"lhs": self.e_canonical, "rhs": self.e_ring, "dim": self.dim,
                "numerator_ring": list(self.numerator_ring),
                "numerator_canonical": list(self.numerator_canonical),
                "values": list(self.hf_canonical), "check": self.check}


def canonical_multiplicity_check(I: MonomialIdeal, assume_cm: bool = False) -> CanonicalReport:
    """e(m; omega) against e(m; R) using HS_omega(t) = (-1)^d HS_R(1/t).

    Graded shifts are dropped. Dimension <= 1 is certified Cohen-Macaulay
    here; higher dimensions need ``assume_cm``.
    """
    pd = associated_primes(I)
    d = pd.dim
    if d == 0:
        raise ValueError("dimension 0: compare lengths instead")
    if d <= 1:
        if not is_certified_cm(I):
            raise NotCohenMacaulay(f"S/{I} has embedded primes")
    elif not assume_cm:
        raise NotCohenMacaulay("Cohen-Macaulayness must be asserted in dimension >= 2")
    hs = hilbert_series(I)
    rev = tuple(reversed(hs.numerator))
    omega = RationalSeries(rev, d)
    terms = len(rev) + max(DEFAULT_WINDOW, I.ctx.n + 1) + 2
    hf_omega = omega.expand(terms)
    if any(v < 0 for v in hf_omega):
        raise NotCohenMacaulay("negative canonical Hilbert function: ring is not Cohen-Macaulay")
    fit_w = fit_polynomial(hf_omega, max(DEFAULT_WINDOW, d + 1))
    e_ring = hilbert_polynomial(I).multiplicity
    return CanonicalReport(fit_w.multiplicity, e_ring, hs.numerator, rev, tuple(hf_omega), d)


# polarization / regular sequence --------------------------------------------------

def face_numbers(I: MonomialIdeal) -> list[int]:
    """f_i = number of squarefree monomials of degree i outside a squarefree ideal."""
    if not I.is_squarefree():
        raise ValueError("face numbers need a squarefree ideal")
    n = I.ctx.n
    masks = np.arange(1 << n, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(n)) & 1
    inside = _in_ideal_mask(bits, I.gens)
    sizes = bits.sum(axis=1)
    return [int(np.sum(~inside & (sizes == i))) for i in range(n + 1)]


def squarefree_hilbert_function(I: MonomialIdeal, d_max: int) -> tuple[int, ...]:
    """H(d) of S/I for squarefree I from its faces: a face with i vertices carries
    C(d - 1, i - 1) monomials of degree d >= 1."""
    f = face_numbers(I)
    return tuple(f[0] if d == 0 else sum(fi * comb(d - 1, i - 1) for i, fi in enumerate(f) if i)
                 for d in range(d_max + 1))


def polarization_hilbert_check(I: MonomialIdeal, d_max: int | None = None) -> dict:
    """Check HS(S/I) = (1-t)^r HS(S*/I*) for the polarization with r differences.

    This holds exactly because the depolarizing differences form a regular
    sequence of linear forms on S*/I*.
    """
    pol = polarize(I)
    r = len(pol.pairs)
    d_max = d_max if d_max is not None else regularity_bound(I) + I.ctx.n + 2
    star = list(squarefree_hilbert_function(pol.ideal, d_max))
    for _ in range(r):
        star = [star[0]] + [b - a for a, b in zip(star, star[1:])]
    base = list(hilbert_function(I, d_max).values)
    return {"regular_length": r, "values": base, "reduced_polarized": star,
            "depolarized_ok": pol.depolarize() == I, "squarefree": pol.ideal.is_squarefree(),
            "check": "pass" if base == star and pol.depolarize() == I and pol.ideal.is_squarefree()
            else "fail"}
