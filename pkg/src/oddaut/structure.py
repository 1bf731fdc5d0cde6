"""Subgroup-structure computations: centers, Sylow subgroups, complements.

All searches here are deterministic: candidates are scanned in index
order and ties break toward the smallest index, so repeated runs return
identical witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_COMPLEMENT_BUDGET
from .errors import (
    InvalidParameter,
    IsElementaryAbelian,
    NotNormal,
    NotOddOrder,
    PrimeDoesNotDivide,
    SearchBudgetExceeded,
    TrivialGroup,
)
from .groups import Group, Subgroup, cayley_closure, generated_subgroup, quotient


def center(group):
    """Elements commuting with everything; always characteristic."""
    arr = group.np_table()
    mask = (arr == arr.T).all(axis=1)
    members = [int(i) for i in np.nonzero(mask)[0]]
    return Subgroup(group, tuple(members))


def derived_subgroup(group):
    """Closure of all commutators [x, g] = x^-1 g^-1 x g."""
    arr = group.np_table()
    n = group.order
    inv = np.asarray(group.inverse, dtype=np.intp)
    rows = np.arange(n, dtype=np.intp)[:, None]
    cols = np.arange(n, dtype=np.intp)[None, :]
    comm = arr[arr[arr[inv[:, None], inv[None, :]], rows], cols]
    comms = {int(c) for c in np.unique(comm)}
    comms.discard(0)
    members = cayley_closure(group, sorted(comms))
    return Subgroup(group, tuple(members), tuple(sorted(comms)))


def normalizer(group, members):
    """Elements g with g^-1 S g = S for the member set S."""
    mset = frozenset(members)
    out = [
        g
        for g in group.elements()
        if all(group.conjugate(a, g) in mset for a in members)
    ]
    return out


def _p_part(n, p):
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


@dataclass(frozen=True)
class SylowReport:
    prime: int
    subgroup: Subgroup
    conjugate_count: int
    is_normal: bool

    def __post_init__(self):
        g = self.subgroup.parent
        if self.subgroup.order != _p_part(g.order, self.prime):
            raise InvalidParameter("subgroup order is not the full p-part")
        if self.conjugate_count % self.prime != 1:
            raise InvalidParameter("conjugate count incongruent to 1 mod p")
        if self.is_normal != (self.conjugate_count == 1):
            raise InvalidParameter("normality flag inconsistent with count")


def sylow(group, p):
    """A Sylow p-subgroup found by normalizer ascent, plus its conjugacy data.

    Start from the cyclic group on a p-element of maximal p-power order,
    then repeatedly pass to a strictly larger p-subgroup of the current
    normalizer until the full p-part is reached.
    """
    if p < 2 or group.order % p != 0:
        raise PrimeDoesNotDivide(f"{p} does not divide {group.order}")
    target = _p_part(group.order, p)
    orders = group.element_orders()
    best = 0
    seed = 0
    for x in group.elements():
        k = orders[x]
        if k != 1 and target % k == 0 and k > best:
            best = k
            seed = x
    members = cayley_closure(group, [seed])
    while len(members) < target:
        norm = normalizer(group, members)
        mset = set(members)
        grown = None
        for y in norm:
            if y in mset or target % orders[y] != 0:
                continue
            closure = cayley_closure(group, sorted(mset | {y}))
            size = len(closure)
            if size <= target and target % size == 0:
                grown = closure
                break
        if grown is None:
            raise InvalidParameter("normalizer ascent stalled (not a group?)")
        members = grown
    sub = Subgroup(group, tuple(members), ())
    count = _conjugate_orbit_size(group, members)
    return SylowReport(p, sub, count, count == 1)


def _conjugate_orbit_size(group, members):
    start = frozenset(members)
    seen = {start}
    frontier = [start]
    while frontier:
        cur = frontier.pop()
        for g in group.elements():
            img = frozenset(group.conjugate(a, g) for a in cur)
            if img not in seen:
                seen.add(img)
                frontier.append(img)
    return len(seen)


def find_complement(group, normal_sub, budget=DEFAULT_COMPLEMENT_BUDGET):
    """A subgroup B with N ∩ B = 1 and NB = G, or None when none exists.

    Exhaustive backtracking over generated subgroups in min-out-first
    order, pruned by Lagrange on the complement order.  Raises
    SearchBudgetExceeded when the node budget runs out before the search
    space is exhausted, which is distinct from a proven None.
    """
    if normal_sub.parent is not group:
        raise InvalidParameter("subgroup belongs to a different group")
    if not normal_sub.is_normal():
        raise NotNormal("complement search needs a normal subgroup")
    m = group.order // normal_sub.order
    found = _complement_members(group, normal_sub.member_set(), m, budget)
    if found is None:
        return None
    return Subgroup(group, tuple(found))


def _complement_members(group, avoid, m, budget, universe=None):
    """Members of a subgroup of order m meeting ``avoid`` only at 0."""
    if m == 1:
        return [0]
    orders = group.element_orders()
    nodes = [0]
    universe = range(1, group.order) if universe is None else universe
    candidates = [
        x for x in universe if x != 0 and m % orders[x] == 0 and x not in avoid
    ]

    def extend(current, start):
        for idx in range(start, len(candidates)):
            x = candidates[idx]
            if x in current:
                continue
            nodes[0] += 1
            if nodes[0] > budget:
                raise SearchBudgetExceeded("complement search budget exhausted")
            closure = cayley_closure(group, sorted(current | {x}))
            size = len(closure)
            if size > m or m % size != 0:
                continue
            cset = set(closure)
            if any(y in avoid for y in cset if y != 0):
                continue
            if size == m:
                return sorted(cset)
            deeper = extend(cset, idx + 1)
            if deeper is not None:
                return deeper
        return None

    return extend({0}, 0)


def characteristic_elementary_abelian(group, aut):
    """A non-trivial elementary abelian p-subgroup invariant under Aut.

    Scans order-p elements for the smallest prime p first; the smallest
    invariant subgroup generated by an element's Aut-orbit is returned
    when it is elementary abelian.  Ties break toward smaller order and
    then lexicographically smaller member tuples.
    """
    if group.order % 2 == 0:
        raise NotOddOrder("requires a group of odd order")
    if group.order == 1:
        raise TrivialGroup("requires a non-trivial group")
    gens = _aut_generators(aut)
    orders = group.element_orders()
    for p in _prime_divisors(group.order):
        best = None
        for x in group.elements():
            if orders[x] != p:
                continue
            orbit = _aut_orbit(gens, x)
            members = cayley_closure(group, sorted(orbit))
            sub_orders = {orders[y] for y in members if y != 0}
            if sub_orders != {p}:
                continue
            if not _is_abelian_subset(group, members):
                continue
            key = (len(members), tuple(sorted(members)))
            if best is None or key < best[0]:
                best = (key, members)
        if best is not None:
            return Subgroup(group, tuple(best[1]))
    raise InvalidParameter("no invariant elementary abelian subgroup found")


def _aut_generators(aut):
    if hasattr(aut, "generators"):
        gens = list(aut.generators)
        if not gens and getattr(aut, "elements", None):
            gens = list(aut.elements)
        return gens
    return [tuple(m) for m in aut]


def _aut_orbit(gens, x):
    seen = {x}
    frontier = [x]
    while frontier:
        y = frontier.pop()
        for g in gens:
            z = g[y]
            if z not in seen:
                seen.add(z)
                frontier.append(z)
    return seen


def _is_abelian_subset(group, members):
    t = group.table
    return all(t[a][b] == t[b][a] for a in members for b in members)


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_characteristic(group, sub, aut):
    """Setwise invariance of a subgroup under every Aut generator."""
    mset = sub.member_set()
    for g in _aut_generators(aut):
        if any(g[x] not in mset for x in sub.members):
            return False
    return True


@dataclass(frozen=True)
class CentralQuotientProfile:
    quotient_order: int
    is_p_group: bool
    abelian: bool
    invariant_factors: tuple | None
    rank_condition_holds: bool


def central_quotient_profile(group):
    """Shape of G/Z; when it is an abelian p-group, check the rank condition.

    The condition is that the two largest prime-power invariant factors
    agree (at least two factors, alpha_1 = alpha_2); it holds vacuously
    for a trivial quotient.
    """
    from .abelian import abelian_invariants

    z = center(group)
    q, _ = quotient(group, z)
    if q.order == 1:
        return CentralQuotientProfile(1, False, True, (), True)
    primes = _prime_divisors(q.order)
    is_p = len(primes) == 1
    if not q.is_abelian():
        return CentralQuotientProfile(q.order, is_p, False, None, False)
    invs = abelian_invariants(q).factors
    if not is_p:
        return CentralQuotientProfile(q.order, False, True, invs, False)
    # all factors are powers of the same prime; compare top two exponents
    holds = len(invs) >= 2 and invs[-1] == invs[-2]
    return CentralQuotientProfile(q.order, True, True, invs, holds)


def central_characteristic_subgroup(quotient_group, aut_of_quotient):
    """The canonical central characteristic subgroup of a p-group quotient.

    For a non-elementary-abelian p-group: its center when non-abelian,
    otherwise the subgroup generated by the order-p elements.  The result
    is non-trivial, central, invariant under the supplied automorphisms,
    and of index at least p^2; all four facts are asserted.
    """
    primes = _prime_divisors(quotient_group.order)
    if len(primes) != 1:
        raise InvalidParameter("input must be a non-trivial p-group")
    p = primes[0]
    orders = quotient_group.element_orders()
    if all(orders[x] in (1, p) for x in quotient_group.elements()) and \
            quotient_group.is_abelian():
        raise IsElementaryAbelian("quotient is elementary abelian")
    if quotient_group.is_abelian():
        members = sorted(x for x in quotient_group.elements() if orders[x] in (1, p))
        k = Subgroup(quotient_group, tuple(members))
    else:
        k = center(quotient_group)
    if k.order == 1:
        raise InvalidParameter("central characteristic subgroup is trivial")
    zset = center(quotient_group).member_set()
    if not set(k.members) <= zset:
        raise InvalidParameter("subgroup is not central")
    if aut_of_quotient is not None and not is_characteristic(
        quotient_group, k, aut_of_quotient
    ):
        raise InvalidParameter("subgroup is not invariant under Aut")
    if quotient_group.order // k.order < p * p:
        raise InvalidParameter(f"index below {p}^2")
    return k


def all_subgroups(group):
    """Every subgroup, as sorted member tuples (lattice BFS; small groups)."""
    trivial = (0,)
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        cur = frontier.pop()
        cset = set(cur)
        for x in group.elements():
            if x in cset:
                continue
            closure = tuple(sorted(cayley_closure(group, sorted(cset | {x}))))
            if closure not in seen:
                seen.add(closure)
                frontier.append(closure)
    return sorted(seen, key=lambda m: (len(m), m))


def normal_subgroups(group):
    out = []
    for members in all_subgroups(group):
        mset = frozenset(members)
        if all(
            group.conjugate(a, g) in mset for a in members for g in group.elements()
        ):
            out.append(members)
    return out
