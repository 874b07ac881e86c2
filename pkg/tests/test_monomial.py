import itertools

import pytest
from hypothesis import given, settings, strategies as st

from semidual.monomial import (
    MonomialIdeal,
    PolyContext,
    VariablePrime,
    all_monomials_up_to,
    associated_primes,
    colength,
    combine,
    decomposition_check,
    divides,
    irreducible_decomposition,
    localize,
    minimal_generators,
    polarize,
    radical,
    standard_monomial_count,
    standard_monomials,
)

from conftest import ideal

XY = PolyContext.standard(2)
XYZ = PolyContext.standard(3)


def member(gens, m):
    return any(divides(g, m) for g in gens)


def test_minimal_generators_example():
    assert minimal_generators([(2, 0), (2, 1), (0, 1)], XY).gens == ((0, 1), (2, 0))


def test_combine_examples():
    I = ideal(XY, (2, 0), (1, 1))
    assert combine("colon", I, ideal(XY, (1, 0))) == ideal(XY, (1, 0), (0, 1))
    assert combine("sum", ideal(XY, (1, 0)), ideal(XY, (0, 1))) == MonomialIdeal.maximal(XY)
    assert combine("power", MonomialIdeal.maximal(XY), 2) == ideal(XY, (2, 0), (1, 1), (0, 2))
    assert combine("intersect", ideal(XY, (1, 0)), ideal(XY, (0, 1))) == ideal(XY, (1, 1))
    assert combine("product", ideal(XY, (1, 0)), ideal(XY, (1, 0), (0, 1))) == ideal(XY, (2, 0), (1, 1))


def test_context_mismatch():
    with pytest.raises(ValueError):
        ideal(XY, (1, 0)) + ideal(XYZ, (1, 0, 0))


def test_radical_examples():
    assert radical(ideal(XY, (2, 0), (1, 1))) == ideal(XY, (1, 0))
    assert radical(ideal(XYZ, (2, 1, 0), (0, 0, 3))) == ideal(XYZ, (1, 1, 0), (0, 0, 1))


def test_irreducible_decomposition_examples():
    comps = irreducible_decomposition(ideal(XY, (2, 0), (1, 1)))
    assert set(comps) == {ideal(XY, (1, 0)), ideal(XY, (2, 0), (0, 1))}
    comps = irreducible_decomposition(ideal(XY, (2, 0), (1, 1), (0, 3)))
    assert set(comps) == {ideal(XY, (2, 0), (0, 1)), ideal(XY, (1, 0), (0, 3))}
    with pytest.raises(ValueError):
        irreducible_decomposition(MonomialIdeal.unit(XY))


def test_associated_primes_embedded():
    pd = associated_primes(ideal(XY, (2, 0), (1, 1)))
    assert {(P.support, P.minimal) for P in pd.primes} == {
        (frozenset({0}), True), (frozenset({0, 1}), False)}
    assert pd.dim == 1


def test_localize():
    I = ideal(XY, (2, 0), (1, 1))
    loc = localize(I, VariablePrime(frozenset({0})))
    assert loc.ctx.names == ("x",) and loc.gens == ((1,),)
    # at the maximal ideal nothing is inverted
    assert localize(I, VariablePrime(frozenset({0, 1}))) == I


def test_standard_monomials():
    I = ideal(XY, (2, 0), (1, 1), (0, 3))
    assert standard_monomials(I) == [(0, 0), (1, 0), (0, 1), (0, 2)]
    assert [standard_monomial_count(ideal(XY, (1, 1)), d) for d in range(4)] == [1, 2, 2, 2]
    assert colength(I) == 4


def test_polarization_example():
    pol = polarize(ideal(XY, (2, 0), (1, 1), (0, 2)))
    assert pol.ideal.is_squarefree()
    assert len(pol.pairs) == 2
    assert pol.depolarize() == pol.source
    assert pol.ctx.names == ("x_1", "x_2", "y_1", "y_2")


monomial3 = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
ideals3 = st.lists(monomial3, min_size=1, max_size=5).filter(lambda gs: any(sum(g) for g in gs)).map(
    lambda gs: MonomialIdeal(XYZ, tuple(g for g in gs if sum(g)) or ((1, 0, 0),)))


@settings(max_examples=120, deadline=None)
@given(ideals3)
def test_decomposition_membership(I):
    comps = irreducible_decomposition(I)
    for m in all_monomials_up_to(3, 2 * I.max_degree):
        assert (m in I) == all(m in c for c in comps)
    # components are irreducible: generated by pure powers
    assert all(all(len([e for e in g if e]) == 1 for g in c.gens) for c in comps)
    assert decomposition_check(I)["check"] == "pass"


@settings(max_examples=80, deadline=None)
@given(ideals3, ideals3)
def test_operations_against_membership(I, J):
    box = all_monomials_up_to(3, 8)
    S, P, N, C = I + J, I * J, I.intersect(J), I.colon(J)
    for m in box:
        assert (m in S) == (member(I.gens, m) or member(J.gens, m))
        assert (m in N) == (member(I.gens, m) and member(J.gens, m))
        assert (m in C) == all(member(I.gens, tuple(a + b for a, b in zip(m, g))) for g in J.gens)
    for m in P.gens:
        assert any(all(a + b == c for a, b, c in zip(g, h, m)) for g in I.gens for h in J.gens)


@settings(max_examples=80, deadline=None)
@given(ideals3)
def test_radical_against_membership(I):
    rad = radical(I)
    for m in all_monomials_up_to(3, 4):
        powered = tuple(e * 4 for e in m)
        assert (m in rad) == (powered in I)


@settings(max_examples=60, deadline=None)
@given(ideals3)
def test_polarization_roundtrip_property(I):
    pol = polarize(I)
    assert pol.ideal.is_squarefree()
    assert pol.depolarize() == I
    t = [max(g[i] for g in I.gens) for i in range(3)]
    assert len(pol.pairs) == sum(max(ti, 1) - 1 for ti in t)


def test_minimal_generators_antichain():
    gens = list(itertools.product(range(3), repeat=2))[1:]
    I = MonomialIdeal(XY, tuple(gens))
    assert I.gens == ((1, 0), (0, 1))
