"""Automorphism groups by generator-image backtracking.

The search assigns images to a greedy generating sequence g_0, ..., g_{m-1}.
For each prefix the closure <g_0..g_i> is precomputed as a right-
multiplication BFS tree, so a candidate assignment forces the images of
the whole closure and is checked for multiplicativity on every
(element, generator) pair inside it; a complete consistent assignment is
therefore a verified automorphism with no extra pass.

The group order is computed exactly from the orbit sizes of the base
points under stabilising strong generators (orbit-stabiliser along the
chain), so it stays exact even when the element list is too large to
materialise.  Element lists are materialised only up to ``element_cap``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import prod

from .config import (
    DEFAULT_ELEMENT_CAP,
    DEFAULT_SEARCH_BUDGET,
    resolve_order_cap,
)
from .errors import BudgetExceeded, InvalidParameter, OrderCapExceeded
from .groups import (
    Subgroup,
    _greedy_generators,
    compose_images,
    inverse_images,
)


def conjugacy_classes(group):
    """All conjugacy classes (sorted lists) plus the class index per element."""
    n = group.order
    class_id = [-1] * n
    classes = []
    for x in range(n):
        if class_id[x] >= 0:
            continue
        cid = len(classes)
        class_id[x] = cid
        orbit = [x]
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g in range(n):
                z = group.conjugate(y, g)
                if class_id[z] < 0:
                    class_id[z] = cid
                    orbit.append(z)
                    frontier.append(z)
        classes.append(sorted(orbit))
    return classes, class_id


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


def element_fingerprints(group):
    """Per-element invariant vectors, constant on automorphism orbits.

    Combines element order, conjugacy class size, and two rounds of
    power-map refinement (the labels of g^q for primes q dividing the
    order of g).
    """
    n = group.order
    orders = group.element_orders()
    classes, class_id = conjugacy_classes(group)
    sizes = [len(classes[class_id[x]]) for x in range(n)]
    fps = [(orders[x], sizes[x]) for x in range(n)]
    for _ in range(2):
        fps = [
            (
                fps[x],
                tuple(fps[group.power(x, q)] for q in _prime_divisors(orders[x])),
            )
            for x in range(n)
        ]
    return tuple(fps)


def _label_ids(fps):
    table = {}
    out = []
    for fp in fps:
        if fp not in table:
            table[fp] = len(table)
        out.append(table[fp])
    return out


@dataclass
class SearchStats:
    nodes_visited: int = 0
    pruned_by_order: int = 0
    pruned_by_class: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class _Level:
    gen: int
    delta: tuple    # (element, parent, gen_level): element = parent * gens[gen_level]
    checks: tuple   # (x, gen_level, product): img[product] must equal img[x]*img[gen]


class _Chain:
    """Closure chain of a greedy generating sequence with image-search data."""

    def __init__(self, group):
        self.group = group
        n = group.order
        self.orders = group.element_orders()
        self.fingerprints = element_fingerprints(group)
        self.labels = _label_ids(self.fingerprints)
        self.gens = _greedy_generators(group)
        table = group.table
        known = [0]
        known_set = {0}
        self.level_of = [0] * n
        self.levels = []
        self.pools = []
        for i, g in enumerate(self.gens):
            delta = []
            checks = []
            old_count = len(known)
            known.append(g)
            known_set.add(g)
            self.level_of[g] = i
            idx = 0
            while idx < len(known):
                e = known[idx]
                row = table[e]
                js = (i,) if idx < old_count else range(i + 1)
                for j in js:
                    f = row[self.gens[j]]
                    if f in known_set:
                        if f != g or e != 0:
                            checks.append((e, j, f))
                        # e * gens[i] = g for e = 0 is the assignment itself
                    else:
                        known_set.add(f)
                        known.append(f)
                        self.level_of[f] = i
                        delta.append((f, e, j))
                idx += 1
            self.levels.append(_Level(g, tuple(delta), tuple(checks)))
            label = self.labels[g]
            self.pools.append(
                tuple(x for x in range(n) if self.labels[x] == label)
            )
        if len(known) != n:
            raise InvalidParameter("generating sequence does not generate (bug)")

    def search(self, forced, constraints_by_level, stats, budget):
        """First automorphism matching the forced images and constraints.

        ``forced`` maps a level index to the required image of that
        level's generator; ``constraints_by_level`` maps a level index to
        (element, required_image) pairs checked once the element's image
        is determined.  Returns an image tuple or None.
        """
        group = self.group
        n = group.order
        table = group.table
        labels = self.labels
        orders = self.orders
        gens = self.gens
        m = len(gens)
        img = [-1] * n
        img[0] = 0
        used = bytearray(n)
        used[0] = 1
        levels = self.levels
        pools = self.pools

        def down(level):
            if level == m:
                return tuple(img)
            g = gens[level]
            glabel = labels[g]
            lv = levels[level]
            cons = constraints_by_level.get(level, ())
            if level in forced:
                cands = (forced[level],)
            else:
                cands = pools[level]
            for c in cands:
                if used[c] or labels[c] != glabel:
                    continue
                stats.nodes_visited += 1
                if stats.nodes_visited > budget:
                    raise BudgetExceeded(
                        f"automorphism search exceeded {budget} nodes"
                    )
                img[g] = c
                used[c] = 1
                touched = [g]
                ok = True
                for e, parent, j in lv.delta:
                    v = table[img[parent]][img[gens[j]]]
                    if used[v]:
                        ok = False
                        break
                    if orders[v] != orders[e]:
                        stats.pruned_by_order += 1
                        ok = False
                        break
                    if labels[v] != labels[e]:
                        stats.pruned_by_class += 1
                        ok = False
                        break
                    img[e] = v
                    used[v] = 1
                    touched.append(e)
                if ok:
                    for x, j, prodelem in lv.checks:
                        if table[img[x]][img[gens[j]]] != img[prodelem]:
                            ok = False
                            break
                if ok:
                    for elem, req in cons:
                        if img[elem] != req:
                            ok = False
                            break
                if ok:
                    result = down(level + 1)
                    if result is not None:
                        for e in touched:
                            used[img[e]] = 0
                            img[e] = -1
                        return result
                for e in touched:
                    used[img[e]] = 0
                    img[e] = -1
            return None

        return down(0)


def _orbit(point, gens):
    seen = {point}
    frontier = [point]
    while frontier:
        x = frontier.pop()
        for t in gens:
            y = t[x]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def _transversal(point, gens, n):
    ident = tuple(range(n))
    reps = {point: ident}
    frontier = [point]
    while frontier:
        x = frontier.pop(0)
        for t in gens:
            y = t[x]
            if y not in reps:
                reps[y] = compose_images(reps[x], t)
                frontier.append(y)
    return reps


@dataclass
class AutGroup:
    """The full automorphism group of a table group.

    ``elements`` is the canonical sorted list of image tuples when the
    order is at most the element cap, and None otherwise; ``order`` is
    exact either way.
    """

    parent: object
    order: int
    generators: tuple
    elements: list | None
    base: tuple
    search_stats: SearchStats
    _chain: _Chain = field(repr=False, default=None)

    def parity(self):
        return "odd" if self.order % 2 == 1 else "even"

    def is_materialised(self):
        return self.elements is not None


def automorphism_group(
    group,
    budget=DEFAULT_SEARCH_BUDGET,
    element_cap=DEFAULT_ELEMENT_CAP,
    order_cap=None,
):
    """Exact Aut(G) with order, strong generators and optional element list.

    Exceeding the node budget aborts the whole computation: a partial
    automorphism group is worse than none for parity questions.
    """
    cap = resolve_order_cap(order_cap)
    if group.order > cap:
        raise OrderCapExceeded(f"group order {group.order} exceeds cap {cap}")
    start = time.perf_counter()
    stats = SearchStats()
    chain = _Chain(group)
    gens = chain.gens
    m = len(gens)
    n = group.order
    strong = []
    orbit_sizes = []
    for i in range(m - 1, -1, -1):
        base_pt = gens[i]
        prefix = {j: gens[j] for j in range(i)}

        def stab_gens():
            return [
                t for t in strong if all(t[gens[j]] == gens[j] for j in range(i))
            ]

        sg = stab_gens()
        orbit = _orbit(base_pt, sg)
        dead = set()
        for c in chain.pools[i]:
            if c in orbit or c in dead:
                continue
            forced = dict(prefix)
            forced[i] = c
            phi = chain.search(forced, {}, stats, budget)
            if phi is None:
                dead.add(c)
            else:
                strong.append(phi)
                sg = stab_gens()
                orbit = _orbit(base_pt, sg)
        orbit_sizes.append((i, len(orbit)))
    order = prod(size for _, size in orbit_sizes) if orbit_sizes else 1

    elements = None
    if order <= element_cap:
        elems = [tuple(range(n))]
        for i in range(m - 1, -1, -1):
            sg = [t for t in strong if all(t[gens[j]] == gens[j] for j in range(i))]
            reps = _transversal(gens[i], sg, n)
            elems = [compose_images(e, u) for u in reps.values() for e in elems]
        if len(elems) != order or len(set(elems)) != order:
            raise InvalidParameter("transversal enumeration mismatch (bug)")
        elements = sorted(elems)

    stats.wall_time = time.perf_counter() - start
    return AutGroup(
        parent=group,
        order=order,
        generators=tuple(sorted(strong)),
        elements=elements,
        base=tuple(gens),
        search_stats=stats,
        _chain=chain,
    )


@dataclass(frozen=True)
class InnerAutomorphisms:
    automorphisms: tuple
    kernel: Subgroup


def inner_automorphisms(group):
    """Conjugation maps x -> g^-1 x g, deduplicated; kernel is the center."""
    n = group.order
    seen = {}
    central = []
    for g in range(n):
        images = tuple(group.conjugate(x, g) for x in range(n))
        if images not in seen:
            seen[images] = g
        if images == tuple(range(n)):
            central.append(g)
    kernel = Subgroup(group, tuple(central))
    if len(seen) * kernel.order != n:
        raise InvalidParameter("inner automorphism count mismatch (bug)")
    return InnerAutomorphisms(tuple(sorted(seen)), kernel)


@dataclass(frozen=True)
class NIReport:
    """Flags for the no-inversion test.

    ``trivial`` marks the order-1 group, whose vacuous flags are excluded
    from the minimal-order question.
    """

    aut_order_odd: bool
    no_inversion: bool
    trivial: bool
    witness: tuple | None


def is_ni(group, aut):
    """Report whether Aut has odd order and whether any inversion occurs.

    ``no_inversion`` is False exactly when some automorphism sends a
    non-identity element to its inverse; the witness (element, map) is
    returned when one exists.  For odd-order groups the two flags are
    asserted equal.
    """
    n = group.order
    if n == 1:
        return NIReport(True, True, True, None)
    odd = aut.order % 2 == 1
    inv = group.inverse
    witness = None
    if aut.elements is not None:
        for phi in aut.elements:
            for g in range(1, n):
                if phi[g] == inv[g]:
                    witness = (g, phi)
                    break
            if witness:
                break
    else:
        chain = aut._chain
        by_level = sorted(range(1, n), key=lambda g: (chain.level_of[g], g))
        for g in by_level:
            level = chain.level_of[g]
            phi = chain.search(
                {}, {level: ((g, inv[g]),)}, aut.search_stats, DEFAULT_SEARCH_BUDGET
            )
            if phi is not None:
                witness = (g, phi)
                break
    no_inversion = witness is None
    if n % 2 == 1 and odd != no_inversion:
        raise InvalidParameter(
            "odd-order group with mismatched parity and inversion flags (bug)"
        )
    return NIReport(odd, no_inversion, False, witness)
