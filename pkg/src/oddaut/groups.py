"""Dense Cayley-table groups: validation, constructors, products, quotients.

Every group lives on element indices ``0..order-1`` with the identity at
index 0.  Tables are validated at construction: Latin-square rows and
columns, identity, two-sided inverses, and associativity (exhaustive up
to :data:`ASSOC_EXHAUSTIVE_LIMIT`, random triple sampling above it, with
the mode recorded on the group).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .config import resolve_order_cap
from .errors import (
    InvalidParameter,
    NotAGroup,
    NotAHomomorphism,
    NotAnAction,
    NotNormal,
    OrderCapExceeded,
)

ASSOC_EXHAUSTIVE_LIMIT = 512
ASSOC_SAMPLES = 100_000
_ASSOC_SEED = 0x0DDA07


def _check_latin(rows):
    n = len(rows)
    full = frozenset(range(n))
    for g, row in enumerate(rows):
        if len(row) != n:
            raise NotAGroup(f"row {g} has length {len(row)}, expected {n}")
        if set(row) != full:
            raise NotAGroup(f"row {g} is not a permutation of 0..{n - 1}")
    for h in range(n):
        if {rows[g][h] for g in range(n)} != full:
            raise NotAGroup(f"column {h} is not a permutation of 0..{n - 1}")


def _check_associative(rows):
    """Return 'exhaustive' or 'sampled'; raise NotAGroup on a bad triple."""
    n = len(rows)
    arr = np.asarray(rows, dtype=np.intp)
    if n <= ASSOC_EXHAUSTIVE_LIMIT:
        chunk = max(1, (1 << 24) // max(1, n * n))
        for start in range(0, n, chunk):
            block = np.arange(start, min(n, start + chunk))
            left = arr[arr[block]]            # left[i,j,k] = (g_i g_j) g_k
            right = arr[block][:, arr]        # right[i,j,k] = g_i (g_j g_k)
            if not np.array_equal(left, right):
                i, j, k = np.argwhere(left != right)[0]
                g = int(block[i])
                raise NotAGroup(
                    f"associativity fails at triple ({g}, {int(j)}, {int(k)})"
                )
        return "exhaustive"
    rng = random.Random(_ASSOC_SEED ^ n)
    for _ in range(ASSOC_SAMPLES):
        g = rng.randrange(n)
        h = rng.randrange(n)
        k = rng.randrange(n)
        if rows[rows[g][h]][k] != rows[g][rows[h][k]]:
            raise NotAGroup(f"associativity fails at triple ({g}, {h}, {k})")
    return "sampled"


def _find_identity(rows):
    n = len(rows)
    ident = tuple(range(n))
    for e in range(n):
        if rows[e] == ident and all(rows[g][e] == g for g in range(n)):
            return e
    raise NotAGroup("table has no two-sided identity")


def _relabel(rows, e):
    """Swap element labels 0 and e so the identity sits at index 0."""
    n = len(rows)
    perm = list(range(n))
    perm[0], perm[e] = e, 0
    out = [[0] * n for _ in range(n)]
    for g in range(n):
        for h in range(n):
            out[perm[g]][perm[h]] = perm[rows[g][h]]
    return tuple(tuple(row) for row in out)


class Group:
    """A finite group as a dense multiplication table over element indices."""

    __slots__ = (
        "order",
        "table",
        "inverse",
        "name",
        "assoc_check",
        "construction",
        "_np_table",
        "_orders",
        "_abelian",
    )

    def __init__(self, table, name="G", construction=None):
        rows = tuple(tuple(int(x) for x in row) for row in table)
        n = len(rows)
        if n == 0:
            raise NotAGroup("empty table")
        for g, row in enumerate(rows):
            for h, v in enumerate(row):
                if not 0 <= v < n:
                    raise NotAGroup(f"entry table[{g}][{h}] = {v} out of range")
        _check_latin(rows)
        e = _find_identity(rows)
        if e != 0:
            rows = _relabel(rows, e)
        self.assoc_check = _check_associative(rows)
        inverse = []
        for g in range(n):
            x = rows[g].index(0)
            if rows[x][g] != 0:
                raise NotAGroup(f"element {g} has no two-sided inverse")
            inverse.append(x)
        self.order = n
        self.table = rows
        self.inverse = tuple(inverse)
        self.name = str(name)
        self.construction = construction
        self._np_table = None
        self._orders = None
        self._abelian = None

    # -- basic arithmetic ------------------------------------------------

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverse[a]

    def power(self, a, k):
        """a**k with negative exponents via the inverse."""
        if k < 0:
            a = self.inverse[a]
            k = -k
        result = 0
        base = a
        row = self.table
        while k:
            if k & 1:
                result = row[result][base]
            base = row[base][base]
            k >>= 1
        return result

    def conjugate(self, a, b):
        """b^-1 a b."""
        t = self.table
        return t[t[self.inverse[b]][a]][b]

    def commutator(self, x, g):
        """x^-1 g^-1 x g."""
        t = self.table
        return t[t[t[self.inverse[x]][self.inverse[g]]][x]][g]

    def elements(self):
        return range(self.order)

    def element_order(self, a):
        return self.element_orders()[a]

    def element_orders(self):
        if self._orders is None:
            orders = [1] * self.order
            for g in range(1, self.order):
                x = g
                k = 1
                row = self.table
                while x != 0:
                    x = row[x][g]
                    k += 1
                orders[g] = k
            self._orders = tuple(orders)
        return self._orders

    def exponent(self):
        out = 1
        for k in set(self.element_orders()):
            out = out * k // gcd(out, k)
        return out

    def is_abelian(self):
        if self._abelian is None:
            t = self.table
            self._abelian = all(
                t[a][b] == t[b][a]
                for a in range(self.order)
                for b in range(a + 1, self.order)
            )
        return self._abelian

    def np_table(self):
        if self._np_table is None:
            self._np_table = np.asarray(self.table, dtype=np.intp)
        return self._np_table

    def __repr__(self):
        return f"Group({self.name!r}, order={self.order})"


def from_cayley_table(table, name="G"):
    """Validate a raw square table and return a Group.

    The identity is relabelled to index 0 when it sits elsewhere.
    """
    rows = [list(row) for row in table]
    n = len(rows)
    for g, row in enumerate(rows):
        if len(row) != n:
            raise NotAGroup(f"row {g} has length {len(row)}, expected {n}")
    return Group(rows, name)


# -- subgroups -------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    """An element subset of a parent group, validated as a subgroup."""

    parent: Group
    members: tuple
    generators: tuple = ()

    def __post_init__(self):
        members = tuple(sorted(set(int(x) for x in self.members)))
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "generators", tuple(self.generators))
        mset = frozenset(members)
        if 0 not in mset:
            raise NotAGroup("subgroup must contain the identity")
        t = self.parent.table
        inv = self.parent.inverse
        for a in members:
            if inv[a] not in mset:
                raise NotAGroup(f"subgroup not closed under inverse at {a}")
            for b in members:
                if t[a][b] not in mset:
                    raise NotAGroup(f"subgroup not closed at ({a}, {b})")
        if self.parent.order % len(members) != 0:
            raise NotAGroup("subgroup order does not divide the group order")
        object.__setattr__(self, "_member_set", mset)

    @property
    def order(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self._member_set

    def member_set(self):
        return self._member_set

    def is_normal(self):
        g = self.parent
        mset = self._member_set
        return all(
            g.conjugate(a, b) in mset for a in self.members for b in g.elements()
        )

    def as_group(self, name=None):
        """Re-index the subgroup as a standalone Group.

        Returns ``(group, to_parent)`` where ``to_parent[i]`` is the parent
        index of the new element ``i``; the identity stays at index 0.
        """
        to_parent = list(self.members)  # sorted, so 0 comes first
        lookup = {p: i for i, p in enumerate(to_parent)}
        t = self.parent.table
        rows = [
            [lookup[t[a][b]] for b in to_parent]
            for a in to_parent
        ]
        label = name if name is not None else f"{self.parent.name}_sub{self.order}"
        return Group(rows, label), to_parent


def cayley_closure(group, gens):
    """Members of <gens> in BFS discovery order (identity first)."""
    seen = bytearray(group.order)
    seen[0] = 1
    out = [0]
    table = group.table
    gens = [g for g in gens if g != 0]
    for e in out:
        row = table[e]
        for g in gens:
            f = row[g]
            if not seen[f]:
                seen[f] = 1
                out.append(f)
    return out


def generated_subgroup(group, gens):
    """Smallest subgroup containing the given elements."""
    for g in gens:
        if not 0 <= g < group.order:
            raise InvalidParameter(f"generator index {g} out of range")
    members = cayley_closure(group, gens)
    return Subgroup(group, tuple(members), tuple(gens))


def trivial_subgroup(group):
    return Subgroup(group, (0,), ())


def full_subgroup(group):
    return Subgroup(group, tuple(group.elements()), ())


# -- maps ------------------------------------------------------------------

HOM_EXHAUSTIVE_LIMIT = 512
_HOM_SEED = 0x40AB


class GroupMap:
    """A total map between groups given by an image sequence.

    The homomorphism law is checked exhaustively when the source order is
    at most :data:`HOM_EXHAUSTIVE_LIMIT` and on random pairs above that.
    """

    __slots__ = ("source", "target", "images", "bijective")

    def __init__(self, source, target, images, bijective=False):
        images = tuple(int(x) for x in images)
        if len(images) != source.order:
            raise NotAHomomorphism("image sequence has the wrong length")
        for v in images:
            if not 0 <= v < target.order:
                raise NotAHomomorphism(f"image {v} out of range")
        if images[0] != 0:
            raise NotAHomomorphism("identity must map to the identity")
        ts, tt = source.table, target.table
        n = source.order
        if n <= HOM_EXHAUSTIVE_LIMIT:
            for x in range(n):
                ix = images[x]
                row = ts[x]
                for y in range(n):
                    if images[row[y]] != tt[ix][images[y]]:
                        raise NotAHomomorphism(
                            f"law fails at ({x}, {y}): "
                            f"f(xy)={images[row[y]]} but f(x)f(y)={tt[ix][images[y]]}"
                        )
        else:
            rng = random.Random(_HOM_SEED ^ n)
            for _ in range(ASSOC_SAMPLES):
                x = rng.randrange(n)
                y = rng.randrange(n)
                if images[ts[x][y]] != tt[images[x]][images[y]]:
                    raise NotAHomomorphism(f"law fails at ({x}, {y})")
        if bijective:
            if source.order != target.order or len(set(images)) != n:
                raise NotAHomomorphism("map flagged bijective is not a bijection")
        self.source = source
        self.target = target
        self.images = images
        self.bijective = bijective

    def __call__(self, x):
        return self.images[x]

    def is_bijective(self):
        return (
            self.source.order == self.target.order
            and len(set(self.images)) == self.source.order
        )

    def compose(self, other):
        """Apply self first, then other."""
        if other.source is not self.target:
            raise InvalidParameter("composition endpoints do not match")
        return GroupMap(
            self.source,
            other.target,
            tuple(other.images[v] for v in self.images),
            bijective=self.bijective and other.bijective,
        )

    def map_order(self):
        """Order of a bijective self-map under composition."""
        if self.source is not self.target or not self.is_bijective():
            raise InvalidParameter("map order needs a bijective endomap")
        return permutation_order(self.images)

    def kernel(self):
        return generated_subgroup(
            self.source, [x for x in self.source.elements() if self.images[x] == 0]
        )

    def __repr__(self):
        return f"GroupMap({self.source.name}->{self.target.name})"


def permutation_order(images):
    n = len(images)
    seen = [False] * n
    out = 1
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = images[x]
            length += 1
        out = out * length // gcd(out, length)
    return out


def identity_map(images_len):
    return tuple(range(images_len))


def compose_images(first, second):
    """Image sequence of 'apply first, then second'."""
    return tuple(second[v] for v in first)


def inverse_images(images):
    out = [0] * len(images)
    for x, v in enumerate(images):
        out[v] = x
    return tuple(out)


# -- actions and products ---------------------------------------------------


@dataclass(frozen=True)
class ActionSpec:
    """One automorphism of ``acted`` per element of ``acting``.

    ``maps[b]`` is the image sequence of conjugation by ``b`` in the
    ``b^-1 a b`` convention, so ``maps[b1 b2] = maps[b1]`` followed by
    ``maps[b2]``.
    """

    acting: Group
    acted: Group
    maps: tuple

    def __post_init__(self):
        maps = tuple(tuple(int(v) for v in m) for m in self.maps)
        object.__setattr__(self, "maps", maps)
        b_n, a_n = self.acting.order, self.acted.order
        if len(maps) != b_n:
            raise NotAnAction("need one map per acting element")
        if maps[0] != tuple(range(a_n)):
            raise NotAnAction("identity must act trivially")
        ident = tuple(range(a_n))
        full = frozenset(ident)
        for b, m in enumerate(maps):
            if len(m) != a_n or set(m) != full:
                raise NotAnAction(f"map of element {b} is not a permutation")
        # Generator maps are verified as automorphisms; the composition law
        # below then covers every other element.
        gens = _greedy_generators(self.acting)
        for b in gens:
            try:
                GroupMap(self.acted, self.acted, maps[b], bijective=True)
            except NotAHomomorphism as exc:
                raise NotAnAction(f"map of element {b} is not an automorphism: {exc}")
        tb = self.acting.table
        for b1 in range(b_n):
            m1 = maps[b1]
            for b2 in range(b_n):
                if maps[tb[b1][b2]] != compose_images(m1, maps[b2]):
                    raise NotAnAction(f"composition law fails at ({b1}, {b2})")


def _greedy_generators(group):
    """Generating sequence by repeated largest-closure-gain choice.

    Ties break toward the smallest element index, so the outcome is
    deterministic.
    """
    n = group.order
    if n == 1:
        return []
    gens = []
    current = {0}
    while len(current) < n:
        best_gain = -1
        best = None
        best_closure = None
        for x in range(1, n):
            if x in current:
                continue
            closure = cayley_closure(group, gens + [x])
            if len(closure) > best_gain:
                best_gain = len(closure)
                best = x
                best_closure = closure
        gens.append(best)
        current = set(best_closure)
    return gens


def trivial_action(acted, acting):
    ident = tuple(range(acted.order))
    return ActionSpec(acting, acted, tuple(ident for _ in range(acting.order)))


def action_from_generator(acted, acting, gen_images):
    """ActionSpec of a cyclic acting group from the image of its generator.

    ``acting`` must be generated by element index 1 (as the groups from
    :func:`cyclic` are); the element ``1^k`` then acts by the k-th
    compositional power of ``gen_images``.
    """
    if acting.order == 1:
        return trivial_action(acted, acting)
    if len(cayley_closure(acting, [1])) != acting.order:
        raise InvalidParameter("acting group is not generated by index 1")
    ordered = [None] * acting.order
    current = tuple(range(acted.order))
    x = 0
    for _ in range(acting.order):
        ordered[x] = current
        current = compose_images(current, tuple(gen_images))
        x = acting.table[x][1]
    return ActionSpec(acting, acted, tuple(ordered))


def direct_product(g, h, cap=None):
    """Componentwise product on pairs; index = a * |H| + b."""
    cap = resolve_order_cap(cap)
    n = g.order * h.order
    if n > cap:
        raise OrderCapExceeded(f"product order {n} exceeds cap {cap}")
    oh = h.order
    tg, th = g.table, h.table
    rows = [
        [tg[a1][a2] * oh + th[b1][b2] for a2 in range(g.order) for b2 in range(oh)]
        for a1 in range(g.order)
        for b1 in range(oh)
    ]
    out = Group(rows, f"{g.name}x{h.name}")
    out.construction = f"dp:({_cons(g)})x({_cons(h)})"
    return out


def semidirect_product(a, b, action, cap=None):
    """Split extension of ``a`` by ``b`` on pairs; index = x * |B| + y.

    The embedded copy of ``a`` is normal and conjugation of it by the
    embedded ``b`` realises exactly ``action`` (in the ``b^-1 a b``
    convention); this is asserted after construction.
    """
    if action.acting is not b or action.acted is not a:
        raise NotAnAction("action endpoints do not match the factors")
    cap = resolve_order_cap(cap)
    n = a.order * b.order
    if n > cap:
        raise OrderCapExceeded(f"product order {n} exceeds cap {cap}")
    ob = b.order
    ta, tb = a.table, b.table
    inv_b = b.inverse
    maps = action.maps
    rows = []
    for a1 in range(a.order):
        row_a1 = ta[a1]
        for b1 in range(ob):
            act = maps[inv_b[b1]]
            row_b1 = tb[b1]
            rows.append(
                [
                    row_a1[act[a2]] * ob + row_b1[b2]
                    for a2 in range(a.order)
                    for b2 in range(ob)
                ]
            )
    out = Group(rows, f"sdp({a.name},{b.name})")
    # embedded conjugation must reproduce the action
    for b1 in range(ob):
        act = maps[b1]
        for a1 in range(a.order):
            got = out.conjugate(a1 * ob, b1)
            if got != act[a1] * ob:
                raise NotAnAction(
                    f"embedded conjugation disagrees with the action at ({a1}, {b1})"
                )
    return out


def _cons(group):
    return group.construction if group.construction else group.name


def quotient(g, n_sub):
    """Quotient by a normal subgroup, with the projection map.

    Returns ``(Q, proj)`` where cosets are labelled by their smallest
    member, sorted so the identity coset is index 0.
    """
    if n_sub.parent is not g:
        raise InvalidParameter("subgroup belongs to a different group")
    if not n_sub.is_normal():
        raise NotNormal(f"subgroup of order {n_sub.order} is not normal")
    mem = n_sub.members
    t = g.table
    rep_of = [-1] * g.order
    reps = []
    for x in g.elements():
        if rep_of[x] >= 0:
            continue
        coset = sorted(t[x][m] for m in mem)
        rep = coset[0]
        reps.append(rep)
        for y in coset:
            rep_of[y] = rep
    reps.sort()
    index_of = {rep: i for i, rep in enumerate(reps)}
    rows = [
        [index_of[rep_of[t[r1][r2]]] for r2 in reps]
        for r1 in reps
    ]
    q = Group(rows, f"{g.name}/{n_sub.order}")
    proj = GroupMap(g, q, tuple(index_of[rep_of[x]] for x in g.elements()))
    return q, proj


# -- constructors -----------------------------------------------------------


def cyclic(n):
    """Cyclic group of order n (addition mod n)."""
    if n < 1:
        raise InvalidParameter("cyclic order must be at least 1")
    rows = [[(i + j) % n for j in range(n)] for i in range(n)]
    out = Group(rows, f"C{n}")
    out.construction = f"cyclic:{n}"
    return out


def abelian(invariant_factors, cap=None):
    """Direct product of cyclic groups with the given orders."""
    factors = [int(d) for d in invariant_factors]
    if not factors:
        return cyclic(1)
    for d in factors:
        if d < 2:
            raise InvalidParameter("abelian factors must be at least 2")
    out = cyclic(factors[0])
    for d in factors[1:]:
        out = direct_product(out, cyclic(d), cap=cap)
    out.name = "x".join(f"C{d}" for d in factors)
    out.construction = "abelian:" + ",".join(str(d) for d in factors)
    return out


def extraspecial(p, exponent_p=True):
    """Extraspecial group of order p^3 for an odd prime p.

    ``exponent_p=True`` gives the Heisenberg group mod p; otherwise the
    exponent-p^2 group  <x, y | x^(p^2) = y^p = 1, y^-1 x y = x^(1+p)>.
    """
    if p < 3 or any(p % d == 0 for d in range(2, p)):
        raise InvalidParameter("extraspecial constructor needs an odd prime")
    n = p ** 3
    if exponent_p:
        # elements (a, b, c); (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b')
        def idx(a, b, c):
            return (a * p + b) * p + c

        rows = [[0] * n for _ in range(n)]
        for a in range(p):
            for b in range(p):
                for c in range(p):
                    i = idx(a, b, c)
                    for a2 in range(p):
                        for b2 in range(p):
                            for c2 in range(p):
                                rows[i][idx(a2, b2, c2)] = idx(
                                    (a + a2) % p,
                                    (b + b2) % p,
                                    (c + c2 + a * b2) % p,
                                )
        out = Group(rows, f"ES{p}^3+")
        out.construction = f"extraspecial:{p}:p"
        return out
    p2 = p * p

    def idx2(i, j):
        return i * p + j

    rows = [[0] * n for _ in range(n)]
    for i in range(p2):
        for j in range(p):
            shift = pow(1 + p, j, p2)
            for i2 in range(p2):
                for j2 in range(p):
                    rows[idx2(i, j)][idx2(i2, j2)] = idx2(
                        (i + i2 * shift) % p2, (j + j2) % p
                    )
    out = Group(rows, f"ES{p}^3-")
    out.construction = f"extraspecial:{p}:p2"
    return out


def product_embeddings(order_a, order_b):
    """Indices of the embedded factors inside a product on pairs."""
    a_part = [a * order_b for a in range(order_a)]
    b_part = list(range(order_b))
    return a_part, b_part
