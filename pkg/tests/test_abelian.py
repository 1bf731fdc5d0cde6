from __future__ import annotations

import pytest

from oddaut import (
    abelian,
    abelian_basis,
    abelian_direct_factor,
    abelian_invariants,
    automorphism_group,
    build_group,
    central_automorphism_count,
    cyclic,
    direct_product,
    hom_count,
)
from oddaut.errors import NotAbelian

from oracles import brute_hom_count


def test_invariants_c6():
    assert abelian_invariants(cyclic(6)).factors == (6,)


def test_invariants_already_canonical():
    assert abelian_invariants(abelian([2, 4])).factors == (2, 4)


def test_invariants_c6_c4():
    # oracle: the exponent 12 is attained and a factor 2 remains
    g = abelian([6, 4])
    assert g.exponent() == 12
    assert abelian_invariants(g).factors == (2, 12)


def test_invariants_rejects_nonabelian(s3):
    with pytest.raises(NotAbelian):
        abelian_invariants(s3)


def test_basis_generates_independently():
    g = abelian([6, 4])
    factors, gens = abelian_basis(g)
    assert factors == (2, 12)
    orders = g.element_orders()
    assert [orders[x] for x in gens] == [2, 12]


def test_hom_count_trivial_source():
    assert hom_count(cyclic(1), abelian([5, 5])) == 1


def test_hom_count_c6_c4():
    assert hom_count(cyclic(6), cyclic(4)) == 2
    assert brute_hom_count(cyclic(6), cyclic(4)) == 2


def test_hom_count_elementary():
    assert hom_count(abelian([3, 3]), cyclic(3)) == 9
    assert brute_hom_count(abelian([3, 3]), cyclic(3)) == 9


def test_hom_count_symmetric():
    pairs = [
        (cyclic(6), cyclic(4)),
        (abelian([2, 4]), cyclic(8)),
        (abelian([3, 9]), abelian([3, 3])),
    ]
    for a, b in pairs:
        assert hom_count(a, b) == hom_count(b, a)


def test_direct_factor_found():
    g = build_group("dp:(cyclic:3)x(sdp:(cyclic:3)x(cyclic:2):matrix=3,1,2)")
    factor = abelian_direct_factor(g)
    assert factor is not None
    assert factor.order == 3


def test_direct_factor_absent_extraspecial(heis27):
    assert abelian_direct_factor(heis27) is None


def test_direct_factor_absent_trivial_center(s3):
    assert abelian_direct_factor(s3) is None


def test_central_count_abelian():
    g = abelian([2, 4])
    aut = automorphism_group(g)
    report = central_automorphism_count(g, aut)
    assert report.via_enumeration == aut.order
    assert report.cent_inn_equals_center_inn


def test_central_count_d4(d4):
    aut = automorphism_group(d4)
    report = central_automorphism_count(d4, aut)
    assert report.via_hom == 4
    assert report.via_enumeration == 4
    assert report.cent_inn_equals_center_inn


def test_central_count_s3(s3):
    aut = automorphism_group(s3)
    report = central_automorphism_count(s3, aut)
    assert report.via_enumeration == 1
    assert report.via_hom == 1
    assert report.cent_inn_equals_center_inn


def test_central_count_extraspecial(heis27):
    aut = automorphism_group(heis27)
    report = central_automorphism_count(heis27, aut)
    # no abelian direct factor, so both routes must agree exactly
    assert report.via_hom == report.via_enumeration
    assert report.cent_inn_equals_center_inn
