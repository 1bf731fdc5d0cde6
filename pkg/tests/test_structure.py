from __future__ import annotations

import pytest

from oddaut import (
    abelian,
    automorphism_group,
    build_group,
    center,
    central_characteristic_subgroup,
    central_quotient_profile,
    characteristic_elementary_abelian,
    cyclic,
    derived_subgroup,
    direct_product,
    find_complement,
    generated_subgroup,
    sylow,
)
from oddaut.errors import (
    InvalidParameter,
    IsElementaryAbelian,
    NotNormal,
    NotOddOrder,
    PrimeDoesNotDivide,
    TrivialGroup,
)
from oddaut.structure import all_subgroups, normalizer

from oracles import brute_center, brute_commutator_closure, brute_subgroups_of_order


def test_center_abelian_is_whole():
    g = abelian([2, 4])
    assert center(g).order == 8


def test_center_s3_trivial(s3):
    assert list(center(s3).members) == brute_center(s3) == [0]


def test_center_extraspecial(heis27):
    assert list(center(heis27).members) == brute_center(heis27)
    assert center(heis27).order == 3


def test_derived_abelian_trivial():
    assert derived_subgroup(abelian([4, 2])).members == (0,)


def test_derived_s3(s3):
    assert list(derived_subgroup(s3).members) == brute_commutator_closure(s3)
    assert derived_subgroup(s3).order == 3


def test_derived_c7c3(c7c3):
    derived = derived_subgroup(c7c3)
    assert list(derived.members) == brute_commutator_closure(c7c3)
    assert derived.order == 7


def test_sylow_c12_normal():
    g = cyclic(12)
    rep = sylow(g, 2)
    assert rep.subgroup.order == 4
    assert rep.conjugate_count == 1
    assert rep.is_normal


def test_sylow_a4(a4):
    rep = sylow(a4, 3)
    assert rep.subgroup.order == 3
    assert rep.conjugate_count == 4
    # oracle: enumerate every order-3 subgroup directly
    assert len(brute_subgroups_of_order(a4, 3)) == 4
    assert tuple(rep.subgroup.members) in brute_subgroups_of_order(a4, 3)


def test_sylow_c7c3(c7c3):
    rep = sylow(c7c3, 7)
    assert rep.subgroup.order == 7
    assert rep.is_normal
    # oracle: direct normality check
    mset = set(rep.subgroup.members)
    assert all(
        c7c3.conjugate(a, g) in mset for a in rep.subgroup.members
        for g in c7c3.elements()
    )


def test_sylow_rejects_bad_prime(s3):
    with pytest.raises(PrimeDoesNotDivide):
        sylow(s3, 5)


def test_normalizer_of_sylow(a4):
    rep = sylow(a4, 3)
    norm = normalizer(a4, rep.subgroup.members)
    assert len(norm) == a4.order // rep.conjugate_count


def test_complement_c6():
    g = cyclic(6)
    n = generated_subgroup(g, [3])
    comp = find_complement(g, n)
    assert comp is not None
    assert comp.order == 3


def test_complement_c4_absent():
    g = cyclic(4)
    n = generated_subgroup(g, [2])
    assert find_complement(g, n) is None


def test_complement_needs_normal(s3):
    with pytest.raises(NotNormal):
        find_complement(s3, generated_subgroup(s3, [1]))


def test_complement_of_normal_sylow(c7c3):
    rep = sylow(c7c3, 7)
    comp = find_complement(c7c3, rep.subgroup)
    assert comp is not None and comp.order == 3


def test_characteristic_elementary_abelian_c9():
    g = cyclic(9)
    aut = automorphism_group(g)
    sub = characteristic_elementary_abelian(g, aut)
    assert sub.members == (0, 3, 6)


def test_characteristic_elementary_abelian_c7c3(c7c3):
    aut = automorphism_group(c7c3)
    assert aut.order == 42
    sub = characteristic_elementary_abelian(c7c3, aut)
    assert sub.order == 7
    # invariance oracle under the full automorphism list
    mset = set(sub.members)
    assert all(phi[x] in mset for phi in aut.elements for x in sub.members)


def test_characteristic_elementary_abelian_tiebreak():
    g = direct_product(cyclic(3), cyclic(5))
    aut = automorphism_group(g)
    sub = characteristic_elementary_abelian(g, aut)
    assert sub.order == 3  # smallest prime wins the tie


def test_characteristic_elementary_abelian_guards(s3):
    with pytest.raises(NotOddOrder):
        characteristic_elementary_abelian(s3, automorphism_group(s3))
    with pytest.raises(TrivialGroup):
        characteristic_elementary_abelian(cyclic(1), automorphism_group(cyclic(1)))


def test_central_quotient_profile_abelian():
    profile = central_quotient_profile(abelian([3, 9]))
    assert profile.quotient_order == 1
    assert profile.rank_condition_holds


def test_central_quotient_profile_extraspecial(heis27):
    profile = central_quotient_profile(heis27)
    assert profile.is_p_group and profile.abelian
    assert profile.invariant_factors == (3, 3)
    assert profile.rank_condition_holds


def test_central_quotient_profile_s3(s3):
    profile = central_quotient_profile(s3)
    assert profile.quotient_order == 6
    assert not profile.is_p_group


def test_central_characteristic_subgroup_c9c9():
    g = abelian([9, 9])
    k = central_characteristic_subgroup(g, automorphism_group(g))
    assert k.order == 9
    orders = g.element_orders()
    assert all(orders[x] in (1, 3) for x in k.members)
    assert g.order // k.order >= 9


def test_central_characteristic_subgroup_nonabelian(heis27):
    k = central_characteristic_subgroup(heis27, automorphism_group(heis27))
    assert k.members == center(heis27).members


def test_central_characteristic_subgroup_rejects_elementary():
    g = abelian([3, 3])
    with pytest.raises(IsElementaryAbelian):
        central_characteristic_subgroup(g, None)


def test_central_characteristic_subgroup_rejects_non_p_group():
    with pytest.raises(InvalidParameter):
        central_characteristic_subgroup(cyclic(6), None)


def test_all_subgroups_a4(a4):
    subs = all_subgroups(a4)
    # A4: 1 trivial, 3 of order 2, 4 of order 3, 1 of order 4, A4 itself
    assert len(subs) == 10
