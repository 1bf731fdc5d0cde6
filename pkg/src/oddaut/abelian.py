"""Abelian-group arithmetic: invariant factors, Hom counting, direct factors."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod

from .config import DEFAULT_COMPLEMENT_BUDGET
from .errors import InvalidParameter, NotAbelian
from .groups import Subgroup, cayley_closure, compose_images, quotient
from .structure import _complement_members, center, derived_subgroup


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors d1 | d2 | ... | dk, each at least 2."""

    factors: tuple

    def __post_init__(self):
        factors = tuple(int(d) for d in self.factors)
        object.__setattr__(self, "factors", factors)
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise InvalidParameter("factors fail the divisibility chain")
        if any(d < 2 for d in factors):
            raise InvalidParameter("factors must be at least 2")

    @property
    def order(self):
        return prod(self.factors) if self.factors else 1


def abelian_basis(group):
    """Independent cyclic generators of an abelian group.

    Returns ``(factors, generators)`` with ascending invariant factors;
    ``generators[i]`` generates a cyclic direct factor of order
    ``factors[i]``.  Works by repeatedly splitting off a cyclic direct
    factor of maximal order, whose complement carries the rest.
    """
    if not group.is_abelian():
        raise NotAbelian("invariant factors need an abelian group")
    factors = []
    gens = []
    members = list(group.elements())
    orders = group.element_orders()
    while len(members) > 1:
        m = max(orders[x] for x in members)
        x = min(y for y in members if orders[y] == m)
        cyc = set(cayley_closure(group, [x]))
        rest = _complement_members(
            group, cyc, len(members) // m, DEFAULT_COMPLEMENT_BUDGET,
            universe=members,
        )
        if rest is None:
            raise InvalidParameter("cyclic factor has no complement (bug)")
        factors.append(m)
        gens.append(x)
        members = rest
    factors.reverse()
    gens.reverse()
    return tuple(factors), tuple(gens)


def abelian_invariants(group):
    """Invariant factor decomposition of an abelian group."""
    factors, _ = abelian_basis(group)
    inv = AbelianInvariants(factors)
    if inv.order != group.order:
        raise InvalidParameter("invariant factor product mismatch (bug)")
    return inv


def hom_count(a, b):
    """|Hom(A, B)| for abelian A, B via the gcd product over invariants."""
    if not a.is_abelian() or not b.is_abelian():
        raise NotAbelian("Hom counting needs abelian groups")
    fa = abelian_invariants(a).factors
    fb = abelian_invariants(b).factors
    out = 1
    for da in fa:
        for db in fb:
            out *= gcd(da, db)
    return out


def abelian_direct_factor(group, budget=DEFAULT_COMPLEMENT_BUDGET):
    """A non-trivial abelian direct factor, or None.

    An abelian direct factor is necessarily central, so only subgroups
    D of Z(G) are tried; a complement of a central subgroup is
    automatically normal, so G = D x H follows from D ∩ H = 1 and
    |D||H| = |G|.  Candidates D for which G' meets D non-trivially are
    skipped outright (any complement would have to contain G').
    """
    z = center(group)
    if z.order == 1:
        return None
    derived = derived_subgroup(group).member_set()
    for d_members in _subgroups_of_abelian(group, z.members):
        if len(d_members) == 1:
            continue
        dset = set(d_members)
        if any(x in derived for x in dset if x != 0):
            continue
        h = _complement_members(group, dset, group.order // len(d_members), budget)
        if h is not None:
            return Subgroup(group, tuple(d_members))
    return None


def _subgroups_of_abelian(group, members):
    """All subgroups of an abelian member set, smallest (order, members) first."""
    trivial = (0,)
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        cur = frontier.pop()
        cset = set(cur)
        for x in members:
            if x in cset:
                continue
            closure = tuple(sorted(cayley_closure(group, sorted(cset | {x}))))
            if closure not in seen:
                seen.add(closure)
                frontier.append(closure)
    return sorted(seen, key=lambda m: (len(m), m))


@dataclass(frozen=True)
class CentralAutomorphismReport:
    via_hom: int | None
    via_enumeration: int
    cent_inn_equals_center_inn: bool


def central_automorphism_count(group, aut):
    """Count central automorphisms two ways and cross-check the inner layer.

    ``via_enumeration`` counts members of Aut whose displacement
    ``g^-1 (g phi)`` stays central for every g.  ``via_hom`` evaluates
    |Hom(G/G', Z)| when G has no abelian direct factor and is None
    otherwise.  The report also records whether the central automorphisms
    inside Inn(G) are exactly the center of Inn(G), by direct set
    computation.
    """
    if aut.elements is None:
        raise InvalidParameter("needs a materialised automorphism list")
    z = center(group)
    zset = z.member_set()
    inv = group.inverse
    t = group.table
    central = [
        phi
        for phi in aut.elements
        if all(t[inv[g]][phi[g]] in zset for g in group.elements())
    ]
    via_enum = len(central)
    if abelian_direct_factor(group) is None:
        derived = derived_subgroup(group)
        q, _ = quotient(group, derived)
        zg, _ = z.as_group()
        via_hom = hom_count(q, zg)
    else:
        via_hom = None

    from .autengine import inner_automorphisms

    inn = inner_automorphisms(group).automorphisms
    inn_set = set(inn)
    cent_set = set(central)
    z_inn = {
        i
        for i in inn
        if all(compose_images(i, j) == compose_images(j, i) for j in inn)
    }
    ok = (cent_set & inn_set) == z_inn
    return CentralAutomorphismReport(via_hom, via_enum, ok)
