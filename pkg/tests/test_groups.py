from __future__ import annotations

import pytest

from oddaut import (
    ActionSpec,
    Subgroup,
    abelian,
    action_from_generator,
    center,
    cyclic,
    direct_product,
    extraspecial,
    from_cayley_table,
    generated_subgroup,
    quotient,
    semidirect_product,
    trivial_action,
)
from oddaut.errors import (
    InvalidParameter,
    NotAGroup,
    NotAnAction,
    NotNormal,
    OrderCapExceeded,
)

from oracles import element_order_census


def test_trivial_table():
    g = from_cayley_table([[0]], "T")
    assert g.order == 1
    assert g.inverse == (0,)


def test_cyclic3_table():
    rows = [[(i + j) % 3 for j in range(3)] for i in range(3)]
    g = from_cayley_table(rows)
    assert g.order == 3
    assert g.element_order(1) == 3


def test_bad_row_rejected():
    with pytest.raises(NotAGroup) as err:
        from_cayley_table([[0, 1], [1, 1]])
    assert "row 1" in str(err.value)


def test_identity_relabelled():
    # identity is element 1 here: relabel must bring it to index 0
    rows = [[1, 0, 2], [0, 1, 2], [2, 2, 2]]
    with pytest.raises(NotAGroup):
        from_cayley_table(rows)  # column 2 not a permutation
    # C2 with identity at index 1
    g = from_cayley_table([[1, 0], [0, 1]])
    assert g.table[0] == (0, 1)


def test_associativity_failure_names_triple():
    # Latin square with identity but broken associativity (order 5 loop)
    rows = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAGroup) as err:
        from_cayley_table(rows)
    assert "triple" in str(err.value)


def test_cyclic_constructors():
    assert cyclic(1).order == 1
    g = abelian([25, 25])
    assert g.order == 625
    assert g.exponent() == 25
    with pytest.raises(InvalidParameter):
        cyclic(0)
    with pytest.raises(InvalidParameter):
        abelian([1])


def test_extraspecial_exponent_p(heis27):
    assert heis27.order == 27
    z = center(heis27)
    assert z.order == 3
    from oddaut import derived_subgroup

    assert derived_subgroup(heis27).members == z.members
    assert heis27.exponent() == 3


def test_extraspecial_exponent_p2(es27_exp9):
    assert es27_exp9.order == 27
    assert center(es27_exp9).order == 3
    assert es27_exp9.exponent() == 9


def test_extraspecial_needs_odd_prime():
    with pytest.raises(InvalidParameter):
        extraspecial(2)
    with pytest.raises(InvalidParameter):
        extraspecial(9)


def test_direct_product_with_trivial():
    g = cyclic(6)
    prod = direct_product(cyclic(1), g)
    assert prod.table == g.table


def test_direct_product_c2_c3():
    g = direct_product(cyclic(2), cyclic(3))
    assert g.is_abelian()
    # frozen oracle: one identity, one element of order 2, two of order 3,
    # two of order 6
    assert element_order_census(g) == {1: 1, 2: 1, 3: 2, 6: 2}


def test_direct_product_elementary():
    g = direct_product(cyclic(3), cyclic(3))
    census = element_order_census(g)
    assert census == {1: 1, 3: 8}


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        direct_product(cyclic(100), cyclic(100))


def test_semidirect_trivial_action_matches_direct():
    a, b = cyclic(5), cyclic(4)
    sdp = semidirect_product(a, b, trivial_action(a, b))
    assert sdp.table == direct_product(a, b).table


def test_semidirect_c7_c3_centerless(c7c3):
    assert c7c3.order == 21
    assert center(c7c3).members == (0,)


def test_semidirect_rejects_bad_action():
    a, b = cyclic(5), cyclic(4)
    ident = tuple(range(5))
    flip = (0, 2, 1, 4, 3)  # not an automorphism of C5
    with pytest.raises(NotAnAction):
        ActionSpec(b, a, (ident, flip, ident, flip))


def test_action_composition_law_enforced():
    a, b = cyclic(7), cyclic(3)
    sq = tuple(pow(2, 1) * x % 7 for x in range(7))  # x -> 2x has order 3
    bad = (ident := tuple(range(7)), sq, ident)  # wrong power pattern
    with pytest.raises(NotAnAction):
        ActionSpec(b, a, bad)


def test_quotient_by_trivial():
    g = cyclic(6)
    q, proj = quotient(g, Subgroup(g, (0,)))
    assert q.order == 6
    assert proj.is_bijective()


def test_quotient_extraspecial_center(heis27):
    q, proj = quotient(heis27, center(heis27))
    assert q.order == 9
    # frozen oracle: elementary abelian of order 9
    assert element_order_census(q) == {1: 1, 3: 8}
    assert proj.kernel().members == center(heis27).members


def test_quotient_c6_by_c2():
    g = cyclic(6)
    c2 = generated_subgroup(g, [3])
    q, _ = quotient(g, c2)
    assert q.order == 3
    assert element_order_census(q) == {1: 1, 3: 2}


def test_quotient_needs_normal(s3):
    c2 = generated_subgroup(s3, [1])
    assert c2.order == 2
    with pytest.raises(NotNormal):
        quotient(s3, c2)


def test_generated_subgroup_empty():
    g = cyclic(6)
    assert generated_subgroup(g, []).members == (0,)


def test_generated_subgroup_order2():
    g = cyclic(6)
    sub = generated_subgroup(g, [3])
    assert sub.members == (0, 3)


def test_generated_subgroup_two_transpositions(s3):
    orders = s3.element_orders()
    transpositions = [x for x in s3.elements() if orders[x] == 2]
    sub = generated_subgroup(s3, transpositions[:2])
    assert sub.order == 6


def test_lagrange_and_order_divisibility(s3, a4, heis27):
    for g in (s3, a4, heis27, cyclic(12)):
        for x in g.elements():
            assert g.order % g.element_order(x) == 0
            sub = generated_subgroup(g, [x])
            assert g.order % sub.order == 0


def test_subgroup_rejects_non_closed(s3):
    orders = s3.element_orders()
    t = next(x for x in s3.elements() if orders[x] == 2)
    r = next(x for x in s3.elements() if orders[x] == 3)
    with pytest.raises(NotAGroup):
        Subgroup(s3, (0, t, r))


def test_power_negative_exponent():
    g = cyclic(7)
    assert g.power(2, -1) == g.inv(2)
    assert g.power(3, 0) == 0


def test_embedded_conjugation_matches_action():
    a, b = cyclic(7), cyclic(3)
    doubling = tuple(2 * x % 7 for x in range(7))
    action = action_from_generator(a, b, doubling)
    g = semidirect_product(a, b, action)
    # conjugating the embedded copy of a by the embedded generator of b
    # realises exactly the action map (checked again here, outside the
    # constructor's own assertion)
    for x in range(7):
        assert g.conjugate(x * 3, 1) == doubling[x] * 3
