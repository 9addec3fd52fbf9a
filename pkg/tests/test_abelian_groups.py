import itertools
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from premetric.abelian_groups import (QZ, FinAbGroup, GroupHom, Subgroup, cyclic, dual_hom,
                                      enumerate_automorphisms, enumerate_homs,
                                      enumerate_subgroups, hom_compose, hom_count, hom_new, qz)
from premetric.config import limits
from premetric.errors import SizeGuard, WellDefinednessError

SMALL_GROUPS = [(1,), (2,), (3,), (4,), (6,), (2, 2), (2, 4), (3, 3), (2, 2, 2), (4, 2)]


# QZ scalars

def test_qz_canonical_examples():
    assert str(qz(3, 2)) == "1/2"
    assert str(qz(0, 7)) == "0/1"
    assert str(qz(-1, 4)) == "3/4"
    assert qz(2, 4) == qz(1, 2)


def test_qz_rejects_zero_denominator():
    with pytest.raises(ValueError):
        qz(1, 0)


@given(st.integers(-50, 50), st.integers(1, 30), st.integers(-50, 50), st.integers(1, 30))
def test_qz_group_laws(a, b, c, d):
    x, y = qz(a, b), qz(c, d)
    assert x + y == y + x
    assert x + QZ() == x
    assert x - x == QZ()
    assert (x + y) - y == x
    assert 0 <= x.num < x.den
    assert x * x.den == 0
    assert x * x.order == 0


@given(st.integers(-50, 50), st.integers(1, 30), st.integers(1, 12))
def test_qz_division_is_a_preimage(a, b, k):
    x = qz(a, b)
    assert (x / k) * k == x


def test_qz_parse():
    assert QZ.parse("3/8") == qz(3, 8)
    assert QZ.parse(" -1/2 ") == qz(1, 2)
    assert QZ.parse(5) == QZ()


# homomorphisms

def test_hom_new_examples():
    z2, z4 = cyclic(2), cyclic(4)
    assert hom_new(z2, z2, [[1]]).is_identity()
    with pytest.raises(WellDefinednessError):
        hom_new(z2, z4, [[1]])
    f = hom_new(z2, z4, [[2]])
    assert f((1,)) == (2,)


def test_hom_new_shape_mismatch():
    with pytest.raises(WellDefinednessError):
        hom_new(cyclic(2), FinAbGroup((2, 2)), [[1]])


def test_compose_examples():
    z4 = cyclic(4)
    three = hom_new(z4, z4, [[3]])
    assert hom_compose(three, three).is_identity()
    ident = GroupHom.identity(z4)
    assert hom_compose(three, ident) == three
    assert hom_compose(ident, three) == three


def test_dual_examples():
    z2, z4 = cyclic(2), cyclic(4)
    assert dual_hom(GroupHom.identity(FinAbGroup((2, 4)))).is_identity()
    f = hom_new(z2, z4, [[2]])
    fs = dual_hom(f)
    assert fs.source == z4 and fs.target == z2
    assert fs.to_list() == [[1]]
    for psi in z4.elements:
        for x in z2.elements:
            assert z2.pairing(fs(psi), x) == z4.pairing(psi, f(x))


@pytest.mark.parametrize("G", [(2,), (2, 4), (3,), (2, 2)])
@pytest.mark.parametrize("H", [(4,), (2, 2), (6,)])
def test_homs_are_homomorphisms_and_dual_identity(G, H):
    G, H = FinAbGroup(G), FinAbGroup(H)
    homs = enumerate_homs(G, H)
    assert len(homs) == hom_count(G, H) == len(set(homs))
    for f in homs:
        for x, y in itertools.product(G.elements, repeat=2):
            assert f(G.add(x, y)) == H.add(f(x), f(y))
        fs = dual_hom(f)
        assert dual_hom(fs) == f
        for psi in H.elements:
            for x in G.elements:
                assert G.pairing(fs(psi), x) == H.pairing(psi, f(x))


def test_dual_is_contravariant():
    G, H, K = FinAbGroup((2, 4)), FinAbGroup((4,)), FinAbGroup((2, 2))
    for f in enumerate_homs(G, H):
        for g in enumerate_homs(H, K):
            assert dual_hom(g @ f) == dual_hom(f) @ dual_hom(g)


def test_hom_counts():
    assert [f.to_list() for f in enumerate_homs(cyclic(2), cyclic(3))] == [[[0]]]
    assert len(enumerate_homs(cyclic(2), cyclic(4))) == 2
    assert len(enumerate_homs(FinAbGroup((2, 2)), FinAbGroup((2, 2)))) == 16


def test_hom_enumeration_guard():
    with limits(max_candidates=10):
        with pytest.raises(SizeGuard):
            enumerate_homs(FinAbGroup((2, 2)), FinAbGroup((2, 2)))


def test_pairing_is_perfect():
    for orders in SMALL_GROUPS:
        G = FinAbGroup(orders)
        for phi in G.elements:
            if phi != G.zero():
                assert any(G.pairing(phi, a) for a in G.elements)


# automorphisms

@pytest.mark.parametrize("orders,count", [((4,), 2), ((2, 2), 6), ((2, 4), 8), ((3,), 2),
                                          ((2, 2, 2), 168), ((1,), 1)])
def test_automorphism_counts(orders, count):
    auts = enumerate_automorphisms(FinAbGroup(orders))
    assert len(auts) == count


@pytest.mark.parametrize("orders", [(2, 2), (2, 4), (6,)])
def test_automorphisms_form_a_group(orders):
    G = FinAbGroup(orders)
    auts = set(enumerate_automorphisms(G))
    assert GroupHom.identity(G) in auts
    for g in auts:
        inv = g.inverse()
        assert inv in auts
        assert (g @ inv).is_identity() and (inv @ g).is_identity()
        for h in auts:
            assert g @ h in auts


def test_non_bijective_has_no_inverse():
    assert hom_new(cyclic(4), cyclic(4), [[2]]).inverse() is None


# subgroups

@pytest.mark.parametrize("orders,count", [((4,), 3), ((2, 2), 5), ((6,), 4), ((2, 4), 8),
                                          ((2, 2, 2), 16), ((3, 3), 6)])
def test_subgroup_counts(orders, count):
    assert len(enumerate_subgroups(FinAbGroup(orders))) == count


@pytest.mark.parametrize("orders", SMALL_GROUPS)
def test_subgroups_are_closed_with_certified_bases(orders):
    G = FinAbGroup(orders)
    subs = enumerate_subgroups(G)
    assert len({s.element_set for s in subs}) == len(subs)
    for B in subs:
        assert G.zero() in B
        for x in B.elements:
            assert G.neg(x) in B
            for y in B.elements:
                assert G.add(x, y) in B
        order = 1
        for o in B.basis_orders:
            order *= o
        assert order == B.order
        assert Subgroup.generated_by(G, B.basis) == B
        assert B.inclusion().is_injective()
        for x in B.elements:
            assert B.inclusion()(B.coords(x)) == x


def test_subgroups_exhaustive_against_subsets():
    G = FinAbGroup((2, 2))
    closed = set()
    for mask in range(1 << G.order):
        S = {G.elements[i] for i in range(G.order) if mask >> i & 1}
        if G.zero() in S and all(G.add(x, y) in S for x in S for y in S):
            closed.add(frozenset(S))
    assert closed == {s.element_set for s in enumerate_subgroups(G)}


def test_invariant_factors_display():
    assert FinAbGroup((2, 3)).invariant_factors() == (6,)
    assert FinAbGroup((4, 2)).invariant_factors() == (2, 4)
    assert str(FinAbGroup(())) == "trivial"


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL_GROUPS), st.data())
def test_random_hom_additivity(orders, data):
    G = FinAbGroup(orders)
    H = FinAbGroup(data.draw(st.sampled_from(SMALL_GROUPS)))
    rows = []
    for n in H.orders:
        row = []
        for m in G.orders:
            step = n // gcd(m, n)
            row.append(step * data.draw(st.integers(0, n)))
        rows.append(row)
    f = GroupHom(G, H, rows)
    x = data.draw(st.sampled_from(G.elements))
    y = data.draw(st.sampled_from(G.elements))
    assert f(G.add(x, y)) == H.add(f(x), f(y))
    assert f(G.zero()) == H.zero()
