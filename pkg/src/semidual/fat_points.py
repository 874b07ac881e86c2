"""Fat point schemes in projective space over Q.

The degree-d piece of I = I(Q_1)^{m_1} cap ... cap I(Q_r)^{m_r} is the space of
forms vanishing to order m_j at Q_j, computed as the kernel of an exact
integer condition matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .hilbert import HilbertData, NotStabilized
from .monomial import monomials_of_degree


class SchemeError(ValueError):
    pass


def _normalize(point: Sequence) -> tuple[Fraction, ...]:
    q = tuple(Fraction(c) for c in point)
    lead = next((c for c in q if c != 0), None)
    if lead is None:
        raise SchemeError("the zero vector is not a projective point")
    return tuple(c / lead for c in q)


def _integral(q: tuple[Fraction, ...]) -> tuple[int, ...]:
    den = math.lcm(*(c.denominator for c in q))
    return tuple(int(c * den) for c in q)


@dataclass(frozen=True)
class FatPointScheme:
    n: int
    points: tuple[tuple[Fraction, ...], ...]
    multiplicities: tuple[int, ...]

    @classmethod
    def create(cls, points: Sequence[Sequence], multiplicities: Sequence[int]) -> "FatPointScheme":
        if len(points) != len(multiplicities):
            raise SchemeError("one multiplicity per point is required")
        if not points:
            raise SchemeError("at least one point is required")
        pts = tuple(_normalize(q) for q in points)
        n = len(pts[0]) - 1
        if n < 1 or any(len(q) != n + 1 for q in pts):
            raise SchemeError("points must share one ambient P^n with n >= 1")
        if len(set(pts)) != len(pts):
            raise SchemeError("points must be pairwise distinct in projective space")
        mults = tuple(int(m) for m in multiplicities)
        if any(m < 1 for m in mults):
            raise SchemeError("multiplicities must be positive")
        return cls(n, pts, mults)

    @cached_property
    def integral_points(self) -> tuple[tuple[int, ...], ...]:
        """Integer representatives (scaling does not change vanishing orders)."""
        return tuple(_integral(q) for q in self.points)

    @property
    def total_multiplicity(self) -> int:
        return sum(self.multiplicities)

    @property
    def expected_degree(self) -> int:
        """Sum of the local lengths C(m_j + n - 1, n)."""
        return sum(math.comb(m + self.n - 1, self.n) for m in self.multiplicities)

    def describe(self) -> str:
        return "; ".join(f"[{':'.join(str(c) for c in q)}]^{m}"
                         for q, m in zip(self.points, self.multiplicities))


def _derivative_orders(nvars: int, below: int, skip: int | None = None):
    """Exponent vectors alpha with |alpha| < below, optionally avoiding one variable."""
    for k in range(below):
        for a in monomials_of_degree(nvars, k):
            if skip is None or a[skip] == 0:
                yield tuple(int(x) for x in a)


def _falling(b: int, a: int) -> int:
    out = 1
    for t in range(a):
        out *= b - t
    return out


def derivative_row(alpha: Sequence[int], q: Sequence[int], monomials) -> list[int]:
    """Values of d^alpha x^beta at q for every beta in ``monomials``."""
    row = []
    for beta in monomials:
        if any(b < a for a, b in zip(alpha, beta)):
            row.append(0)
            continue
        c = 1
        for a, b, x in zip(alpha, beta, q):
            c *= _falling(int(b), a) * x ** (int(b) - a)
        row.append(c)
    return row


def condition_matrix(scheme: FatPointScheme, d: int) -> list[list[int]]:
    """Rows: derivatives of order < m_j at Q_j applied to the degree-d monomials.

    Only derivatives free of the variable normalized to 1 at Q_j are used; by
    Euler's relation the others are combinations of these, so the kernel is the
    same as for the full operator set (see ``full_condition_matrix``).
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    mons = monomials_of_degree(scheme.n + 1, d)
    rows = []
    for q, qi, m in zip(scheme.points, scheme.integral_points, scheme.multiplicities):
        chart = next(i for i, c in enumerate(q) if c != 0)
        for alpha in _derivative_orders(scheme.n + 1, m, skip=chart):
            rows.append(derivative_row(alpha, qi, mons))
    return rows


def full_condition_matrix(scheme: FatPointScheme, d: int) -> list[list[int]]:
    """Every partial derivative of order < m_j, in all n + 1 variables."""
    mons = monomials_of_degree(scheme.n + 1, d)
    return [derivative_row(alpha, qi, mons)
            for qi, m in zip(scheme.integral_points, scheme.multiplicities)
            for alpha in _derivative_orders(scheme.n + 1, m)]


# exact linear algebra over Q -----------------------------------------------------

def rref_q(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns the nonzero rows and pivot columns."""
    mat = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank_q(rows: Sequence[Sequence[int]], ncols: int) -> int:
    """Rank of an integer matrix by fraction-free forward elimination."""
    mat = [list(map(int, r)) for r in rows if any(r)]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        top = mat[rank]
        a = top[c]
        for i in range(rank + 1, len(mat)):
            b = mat[i][c]
            if b:
                row = [a * x - b * y for x, y in zip(mat[i], top)]
                g = math.gcd(*row)
                mat[i] = [x // g for x in row] if g > 1 else row
        rank += 1
        if rank == len(mat):
            break
    return rank


def kernel_q(rows: Sequence[Sequence], ncols: int) -> list[list[int]]:
    """Integer basis of the right kernel (primitive vectors)."""
    red, pivots = rref_q(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        den = math.lcm(*(x.denominator for x in v))
        ints = [int(x * den) for x in v]
        g = math.gcd(*ints)
        basis.append([x // g for x in ints])
    return basis


@dataclass(frozen=True)
class DegreeSlice:
    degree: int
    monomials: tuple[tuple[int, ...], ...]
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def forms(self, names: Sequence[str]) -> list[str]:
        out = []
        for v in self.basis:
            terms = []
            for c, m in zip(v, self.monomials):
                if c:
                    mono = "*".join(f"{x}^{e}" if e > 1 else x for x, e in zip(names, m) if e) or "1"
                    terms.append(f"{c}*{mono}")
            out.append(" + ".join(terms))
        return out


def degree_slice(scheme: FatPointScheme, d: int) -> DegreeSlice:
    mons = tuple(tuple(int(x) for x in m) for m in monomials_of_degree(scheme.n + 1, d))
    basis = kernel_q(condition_matrix(scheme, d), len(mons))
    return DegreeSlice(d, mons, tuple(tuple(v) for v in basis))


def slice_vanishes(scheme: FatPointScheme, sl: DegreeSlice) -> bool:
    """Round trip: every basis form is killed by every order-< m_j derivative at Q_j."""
    full = full_condition_matrix(scheme, sl.degree)
    return all(sum(a * b for a, b in zip(row, v)) == 0 for row in full for v in sl.basis)


def hilbert_function(scheme: FatPointScheme, d_max: int | None = None) -> HilbertData:
    """HF(d) = dim S_d - dim I_d = rank(condition_matrix(d)) for d <= d_max.

    Stabilization is declared at the first d >= sum(m_j) with HF(d) = HF(d + 1).
    """
    s = scheme.total_multiplicity
    if d_max is None:
        d_max = s + 1
    if d_max < 0:
        raise ValueError("d_max must be non-negative")
    values = []
    for d in range(d_max + 1):
        ncols = math.comb(scheme.n + d, scheme.n)
        values.append(rank_q(condition_matrix(scheme, d), ncols))
    stable = next((d for d in range(s, d_max) if values[d] == values[d + 1]), None)
    if stable is None:
        raise NotStabilized(f"no two equal consecutive values at d >= {s} within d_max = {d_max}")
    degree = values[stable]
    first = stable
    while first > 0 and values[first - 1] == degree:
        first -= 1
    return HilbertData(tuple(values), (Fraction(degree),), 1, degree, first)


@dataclass
class FatPointReport:
    scheme: FatPointScheme
    hf: HilbertData
    expected: int
    terms: list[int] = field(default_factory=list)

    @property
    def degree(self) -> int:
        return self.hf.multiplicity

    @property
    def check(self) -> str:
        return "pass" if self.degree == self.expected else "fail"

    def to_json(self) -> dict:
        return {"scheme": self.scheme.describe(), "hf": list(self.hf.values), "degree": self.degree,
                "stable_from": self.hf.stable_from, "expected": self.expected,
                "local_lengths": self.terms, "check": self.check}


def multiplicity_equality_check(scheme: FatPointScheme, d_max: int | None = None) -> FatPointReport:
    """Scheme degree against the sum of local lengths C(m_j + n - 1, n), each with e = 1."""
    hf = hilbert_function(scheme, d_max)
    terms = [math.comb(m + scheme.n - 1, scheme.n) for m in scheme.multiplicities]
    return FatPointReport(scheme, hf, sum(terms), terms)
