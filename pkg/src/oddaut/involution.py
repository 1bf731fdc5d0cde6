"""Order-2 automorphism construction for G = AB with a class-2 normal part.

Pipeline: compute the conjugation action of B on the central quotient of
A as matrices over Z/q (q the quotient exponent), reduce it completely
into irreducible blocks, choose a companion basis per non-trivial block,
lift it to group elements normalised to order dividing q, solve the
central-constant system that makes basis inversion commute with the
action, and extend the resulting automorphism of A to all of G.  Every
step re-verifies its output on the multiplication table.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from math import gcd

import numpy as np

from .abelian import abelian_basis
from .errors import (
    ActionNotCoprime,
    DoesNotCommuteWithAction,
    ExponentTwo,
    HypothesisViolated,
    InvalidParameter,
    NoCentralSolution,
    NonUniqueSolution,
    NoSolution,
    NotAHomomorphism,
    NotElementaryAbelian,
    NotTrivialOnIntersection,
    NotWellDefined,
    TrivialAction,
)
from .groups import ActionSpec, GroupMap, Subgroup, quotient
from .linalg import FpMatrix, decompose
from .structure import center, derived_subgroup


@dataclass(frozen=True)
class ExtensionProblem:
    """G = AB with A normal; carries the center and an optional map of A."""

    group: object
    normal_part: Subgroup
    complement_part: Subgroup
    center_part: Subgroup
    phi: dict | None = None


def extension_problem(group, a_sub, b_sub, phi=None):
    """Validated problem instance: A normal and G covered by the products AB."""
    if a_sub.parent is not group or b_sub.parent is not group:
        raise InvalidParameter("subgroups belong to a different group")
    if not a_sub.is_normal():
        raise HypothesisViolated("normal part is not normal")
    covered = bytearray(group.order)
    count = 0
    for a in a_sub.members:
        row = group.table[a]
        for b in b_sub.members:
            g = row[b]
            if not covered[g]:
                covered[g] = 1
                count += 1
    if count != group.order:
        raise HypothesisViolated("products AB do not cover the group")
    return ExtensionProblem(group, a_sub, b_sub, center(group), phi)


def _prime_power(n):
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            break
        p += 1
    else:
        p = m
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        return None
    return p, e


@dataclass
class InducedAction:
    """The conjugation action of B on A/(Z ∩ A) in explicit coordinates."""

    prime: int
    modulus: int          # q = p^e, the exponent of A/(Z ∩ A)
    rank: int
    a_group: object       # A re-indexed as a standalone group
    a_to_parent: list
    parent_to_a: dict
    z_cap_a: tuple        # parent indices of Z ∩ A
    quotient_group: object
    projection: object    # GroupMap a_group -> quotient_group
    basis_cosets: tuple   # quotient indices forming a homocyclic basis
    coords: dict          # quotient index -> exponent vector mod q
    coset_reps: tuple     # one B member per coset of Z ∩ B, sorted
    matrices: dict        # coset rep -> row tuple over Z/q
    matrices_fp: tuple    # FpMatrix reductions, one per coset rep
    action: ActionSpec    # conjugation automorphisms of a_group per B element

    def coset_of(self, parent_elem):
        return self.projection(self.parent_to_a[parent_elem])

    def vector_of(self, parent_elem):
        return self.coords[self.coset_of(parent_elem)]

    def rep_of_vector(self, vec):
        """Smallest A-member (parent index) in the coset with these coords."""
        target = self._coset_by_vec[tuple(v % self.modulus for v in vec)]
        for a_idx, q_idx in enumerate(self.projection.images):
            if q_idx == target:
                return self.a_to_parent[a_idx]
        raise InvalidParameter("empty coset (bug)")

    def is_trivial(self):
        ident = _identity_rows(self.rank, self.modulus)
        return all(rows == ident for rows in self.matrices.values())


def _identity_rows(n, q):
    return tuple(tuple(1 % q if i == j else 0 for j in range(n)) for i in range(n))


def _mat_mul(a, b, q):
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % q for col in bt) for row in a
    )


def _mat_vec(m, v, q):
    return tuple(sum(a * b for a, b in zip(row, v)) % q for row in m)


def induced_action(problem):
    """Matrices of conjugation on A/(Z ∩ A), with the acting ActionSpec.

    The quotient must be homocyclic (all invariant factors equal, say
    p^e); its exponent is the working modulus.  The returned FpMatrix
    representation is the mod-p reduction.  The action is verified to
    factor through B/(Z ∩ B) and to have order coprime to p.
    """
    g = problem.group
    a_sub = problem.normal_part
    b_sub = problem.complement_part
    z_set = problem.center_part.member_set()
    z_cap_a = tuple(sorted(set(a_sub.members) & z_set))
    a_group, a_to_parent = a_sub.as_group()
    parent_to_a = {p: i for i, p in enumerate(a_to_parent)}
    za_sub = Subgroup(a_group, tuple(parent_to_a[x] for x in z_cap_a))
    q_group, projection = quotient(a_group, za_sub)
    if q_group.order == 1:
        raise NotElementaryAbelian("central quotient of the normal part is trivial")
    if not q_group.is_abelian():
        raise NotElementaryAbelian("central quotient is not abelian")
    factors, gens = abelian_basis(q_group)
    if len(set(factors)) != 1:
        raise NotElementaryAbelian(
            f"central quotient is not homocyclic: invariants {list(factors)}"
        )
    modulus = factors[0]
    pe = _prime_power(modulus)
    if pe is None:
        raise NotElementaryAbelian("quotient exponent is not a prime power")
    prime = pe[0]
    rank = len(gens)

    coords = {}
    for exps in iproduct(range(modulus), repeat=rank):
        elem = 0
        for gen, e in zip(gens, exps):
            elem = q_group.mul(elem, q_group.power(gen, e))
        if elem in coords:
            raise InvalidParameter("basis enumeration collision (bug)")
        coords[elem] = exps
    if len(coords) != q_group.order:
        raise InvalidParameter("basis does not span the quotient (bug)")

    basis_reps_parent = []
    for gen in gens:
        a_idx = min(i for i, img in enumerate(projection.images) if img == gen)
        basis_reps_parent.append(a_to_parent[a_idx])

    # one matrix per coset of Z ∩ B, verified constant on each coset
    z_cap_b = sorted(set(b_sub.members) & z_set)
    mat_of = {}
    for b in b_sub.members:
        cols = []
        for rep in basis_reps_parent:
            y = g.conjugate(rep, b)
            if y not in parent_to_a:
                raise HypothesisViolated("conjugation leaves the normal part")
            cols.append(coords[projection(parent_to_a[y])])
        mat_of[b] = tuple(
            tuple(cols[j][i] for j in range(rank)) for i in range(rank)
        )
    coset_seen = {}
    for b in b_sub.members:
        cos = frozenset(g.mul(b, z) for z in z_cap_b)
        rep = min(cos)
        if rep in coset_seen:
            if coset_seen[rep] != mat_of[b]:
                raise HypothesisViolated("action does not factor through B/(Z ∩ B)")
        else:
            coset_seen[rep] = mat_of[b]
    coset_reps = tuple(sorted(coset_seen))
    matrices = {rep: coset_seen[rep] for rep in coset_reps}

    ident = _identity_rows(rank, modulus)
    for rep, rows in matrices.items():
        acc = rows
        order = 1
        while acc != ident:
            acc = _mat_mul(acc, rows, modulus)
            order += 1
            if order > b_sub.order:
                raise ActionNotCoprime("matrix order exceeds |B| (bug)")
        if order % prime == 0:
            raise ActionNotCoprime(
                f"conjugation by {rep} has order {order}, divisible by {prime}"
            )
    reps = list(matrices)
    for i, r1 in enumerate(reps):
        for r2 in reps[i + 1:]:
            if _mat_mul(matrices[r1], matrices[r2], modulus) != _mat_mul(
                matrices[r2], matrices[r1], modulus
            ):
                raise HypothesisViolated("induced matrices do not commute")

    b_group, b_to_parent = b_sub.as_group()
    maps = []
    for b in b_to_parent:
        maps.append(
            tuple(
                parent_to_a[g.conjugate(a_to_parent[i], b)]
                for i in range(a_group.order)
            )
        )
    action = ActionSpec(b_group, a_group, tuple(maps))

    out = InducedAction(
        prime=prime,
        modulus=modulus,
        rank=rank,
        a_group=a_group,
        a_to_parent=a_to_parent,
        parent_to_a=parent_to_a,
        z_cap_a=z_cap_a,
        quotient_group=q_group,
        projection=projection,
        basis_cosets=tuple(gens),
        coords=coords,
        coset_reps=coset_reps,
        matrices=matrices,
        matrices_fp=tuple(
            FpMatrix(prime, rows) for rows in matrices.values()
        ),
        action=action,
    )
    out._coset_by_vec = {v: k for k, v in coords.items()}
    return out


# -- block normalisation ------------------------------------------------------


@dataclass(frozen=True)
class NormalizedBlock:
    """A companion block lifted to group elements of order dividing q."""

    index: int
    dimension: int
    bottom: tuple        # companion bottom-row exponents mod q
    acting_element: int  # parent index generating the block action
    basis: tuple         # parent indices a_0..a_{k-1}
    vectors: tuple       # their coordinate vectors mod q
    sigma: int           # central adjuster applied to every representative
    z_constants: tuple   # parent indices (identity..., z_hat)


@dataclass(frozen=True)
class TrivialRep:
    index: int
    element: int  # parent index, fixed exactly by the whole action
    vector: tuple


def _block_bases_modq(ind, blocks):
    """Ambient Z/q basis vectors per block (lift of the mod-p bases)."""
    if ind.modulus == ind.prime:
        return [tuple(tuple(int(x) for x in v) for v in blk.basis) for blk in blocks]
    if len(blocks) != 1 or blocks[0].dimension != ind.rank:
        raise HypothesisViolated(
            "exponent p^e with e > 1 is supported for a single irreducible "
            "block only"
        )
    n = ind.rank
    return [tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))]


def _restrict_modq(rows, basis, q, p):
    """Matrix of the Z/q action restricted to the span of ``basis``."""
    k = len(basis)
    cols = []
    for v in basis:
        img = _mat_vec(rows, v, q)
        cols.append(_solve_in_basis(basis, img, q, p))
    return tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))


def _solve_in_basis(basis, vec, q, p):
    """Coefficients of vec in a basis whose mod-p reduction is independent."""
    k = len(basis)
    n = len(vec)
    aug = [[basis[j][i] % q for j in range(k)] + [vec[i] % q] for i in range(n)]
    coeffs = [0] * k
    row = 0
    used_rows = []
    for c in range(k):
        pivot = next(
            (r for r in range(row, n) if aug[r][c] % p != 0), None
        )
        if pivot is None:
            raise InvalidParameter("basis not unimodular mod p (bug)")
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = pow(aug[row][c], -1, q)
        aug[row] = [x * inv % q for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][c] % q:
                f = aug[r][c]
                aug[r] = [(x - f * y) % q for x, y in zip(aug[r], aug[row])]
        used_rows.append(row)
        row += 1
    for c, r in enumerate(used_rows):
        coeffs[c] = aug[r][k]
    for r in range(n):
        if r not in used_rows and aug[r][k] % q:
            raise InvalidParameter("vector outside the block span (bug)")
    return tuple(coeffs)


def _companion_modq(rows, q, p, dim):
    """Cyclic basis over Z/q: e_0 orbit under the matrix, plus bottom row."""
    v = tuple(1 if i == 0 else 0 for i in range(dim))
    basis = [v]
    for _ in range(dim - 1):
        basis.append(_mat_vec(rows, basis[-1], q))
    closing = _mat_vec(rows, basis[-1], q)
    bottom = _solve_in_basis(tuple(basis), closing, q, p)
    return tuple(basis), bottom


def _subgroup_exponent(group, members):
    out = 1
    orders = group.element_orders()
    for x in members:
        k = orders[x]
        out = out * k // gcd(out, k)
    return out


def normalize_basis(problem, ind, blocks):
    """Lift companion bases to group elements of order dividing q.

    Within each non-trivial block the representatives are built by
    conjugation, so the chain relations hold exactly; a single central
    adjuster per block (found constructively, exhaustive fallback) brings
    every representative to order dividing q.  Trivial-block
    representatives are fixed by the whole action exactly and need no
    adjustment.
    """
    g = problem.group
    q = ind.modulus
    p = ind.prime
    za = ind.z_cap_a
    za_set = set(za)
    exp_za = _subgroup_exponent(g, za)
    bases_modq = _block_bases_modq(ind, blocks)

    normalized = []
    trivial_reps = []
    for bi, blk in enumerate(blocks):
        basis_q = bases_modq[bi]
        if blk.trivial:
            for v in basis_q:
                elem = ind.rep_of_vector(v)
                for b in ind.coset_reps:
                    if g.conjugate(elem, b) != elem:
                        raise InvalidParameter(
                            "trivial-block representative moves (bug)"
                        )
                trivial_reps.append(TrivialRep(bi, elem, tuple(v)))
            continue

        # single generator of the restricted block action
        restricted = {}
        for b in ind.coset_reps:
            restricted[b] = _restrict_modq(ind.matrices[b], basis_q, q, p)
        distinct = {}
        for b in sorted(restricted):
            distinct.setdefault(restricted[b], b)
        group_size = len(_closure_modq(list(distinct), q))
        acting = None
        for rows, b in sorted(distinct.items(), key=lambda kv: kv[1]):
            if _matrix_order_modq(rows, q) == group_size:
                acting = b
                break
        if acting is None:
            raise InvalidParameter("restricted block action is not cyclic (bug)")
        r_rows = restricted[acting]

        dim = blk.dimension
        cyc_vectors, bottom = _companion_modq(r_rows, q, p, dim)
        if sum(bottom) % p == 1:
            raise HypothesisViolated("companion bottom-row sum is 1 mod p")
        ambient = [
            tuple(
                sum(c * basis_q[t][i] for t, c in enumerate(vec)) % q
                for i in range(ind.rank)
            )
            for vec in cyc_vectors
        ]

        alphas = [ind.rep_of_vector(ambient[0])]
        for j in range(dim - 1):
            alphas.append(g.conjugate(alphas[-1], acting))
        for j, a in enumerate(alphas):
            if ind.vector_of(a) != ambient[j]:
                raise InvalidParameter("conjugated basis leaves its coset (bug)")

        closing = g.conjugate(alphas[-1], acting)
        prod = 0
        for j, a in enumerate(alphas):
            prod = g.mul(prod, g.power(a, bottom[j]))
        z_const = g.mul(closing, g.inv(prod))
        if z_const not in za_set:
            raise InvalidParameter("closing constant is not central (bug)")

        u = g.power(alphas[0], q)
        for a in alphas[1:]:
            if g.power(a, q) != u:
                raise InvalidParameter("q-th powers disagree along the block (bug)")
        if u == 0:
            sigma = 0
        else:
            s = sum(bottom) - 1
            sigma = None
            if exp_za > 1 and gcd(s, exp_za) == 1:
                cand = g.power(z_const, pow(s, -1, exp_za))
                if g.mul(g.power(cand, q), u) == 0:
                    sigma = cand
            if sigma is None:
                for cand in za:
                    if g.mul(g.power(cand, q), u) == 0:
                        sigma = cand
                        break
            if sigma is None:
                raise NoCentralSolution(
                    "no central adjuster gives representatives of order q"
                )
        basis = [g.mul(sigma, a) for a in alphas]
        for j in range(dim - 1):
            if g.conjugate(basis[j], acting) != basis[j + 1]:
                raise InvalidParameter("normalised chain relation broken (bug)")
        closing2 = g.conjugate(basis[-1], acting)
        prod2 = 0
        for j, a in enumerate(basis):
            prod2 = g.mul(prod2, g.power(a, bottom[j]))
        z_hat = g.mul(closing2, g.inv(prod2))
        if z_hat not in za_set:
            raise InvalidParameter("normalised closing constant not central (bug)")
        z_constants = tuple([0] * (dim - 1) + [z_hat])
        normalized.append(
            NormalizedBlock(
                index=bi,
                dimension=dim,
                bottom=tuple(bottom),
                acting_element=acting,
                basis=tuple(basis),
                vectors=tuple(ambient),
                sigma=sigma,
                z_constants=z_constants,
            )
        )
    return normalized, tuple(trivial_reps)


def _closure_modq(mats, q):
    n = len(mats[0])
    ident = _identity_rows(n, q)
    seen = {ident}
    frontier = [ident]
    while frontier:
        cur = frontier.pop()
        for m in mats:
            nxt = _mat_mul(cur, m, q)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def _matrix_order_modq(rows, q):
    n = len(rows)
    ident = _identity_rows(n, q)
    acc = rows
    k = 1
    while acc != ident:
        acc = _mat_mul(acc, rows, q)
        k += 1
        if k > q ** (n * n):
            raise InvalidParameter("matrix order runaway (bug)")
    return k


def solve_zeta(problem, normalized, exp_za=None):
    """Central constants making basis inversion commute with the action.

    Per non-trivial block: back-substitute the chain equations
    ``zeta_j zeta_{j+1}^-1 = z_j^2`` and solve the closing equation for
    ``zeta_{k-1}`` by inverting ``1 - sum(bottom)`` modulo the exponent
    of Z ∩ A, where it is a unit.  The solution is verified against every
    equation and, when the search space is small, re-checked to be the
    unique one by exhaustion.
    """
    g = problem.group
    za = tuple(
        sorted(
            set(problem.normal_part.members) & problem.center_part.member_set()
        )
    )
    if exp_za is None:
        exp_za = _subgroup_exponent(g, za)
    out = {}
    for blk in normalized:
        k = blk.dimension
        zc = blk.z_constants
        suffix = [0] * k  # suffix[j] multiplies zeta_{k-1} to give zeta_j
        for j in range(k - 2, -1, -1):
            suffix[j] = g.mul(g.power(zc[j], 2), suffix[j + 1])
        c = g.power(zc[k - 1], 2)
        for j in range(k - 1):
            c = g.mul(c, g.power(suffix[j], blk.bottom[j]))
        s = (1 - sum(blk.bottom)) % exp_za if exp_za > 1 else 0
        if exp_za > 1:
            if gcd(s, exp_za) != 1:
                raise NoSolution("closing exponent not a unit (bug)")
            zeta_last = g.power(c, pow(s, -1, exp_za))
        else:
            zeta_last = 0
        zetas = [g.mul(suffix[j], zeta_last) for j in range(k - 1)] + [zeta_last]
        _verify_zeta(g, blk, zetas)
        if len(za) ** k <= 15625:
            matches = [
                cand
                for cand in iproduct(za, repeat=k)
                if _zeta_satisfies(g, blk, list(cand))
            ]
            if len(matches) == 0:
                raise NoSolution("exhaustive search found no solution (bug)")
            if len(matches) > 1:
                raise NonUniqueSolution(
                    f"exhaustive search found {len(matches)} solutions"
                )
            if list(matches[0]) != zetas:
                raise NoSolution("constructive solution disagrees (bug)")
        for j, z in enumerate(zetas):
            out[(blk.index, j)] = z
    return out


def _zeta_satisfies(g, blk, zetas):
    k = blk.dimension
    zc = blk.z_constants
    for j in range(k - 1):
        if g.mul(zetas[j], g.inv(zetas[j + 1])) != g.power(zc[j], 2):
            return False
    lhs = 0
    for j in range(k - 1):
        lhs = g.mul(lhs, g.power(zetas[j], -blk.bottom[j]))
    lhs = g.mul(lhs, g.power(zetas[k - 1], 1 - blk.bottom[k - 1]))
    return lhs == g.power(zc[k - 1], 2)


def _verify_zeta(g, blk, zetas):
    if not _zeta_satisfies(g, blk, zetas):
        raise NoSolution("constructed central constants fail the system (bug)")


# -- assembling and extending the involution ---------------------------------


@dataclass
class InvolutionCertificate:
    """An order-2 automorphism of G with the data that produced it."""

    automorphism: GroupMap
    zeta: dict
    normalized_blocks: tuple
    trivial_reps: tuple
    blocks: object
    problem: ExtensionProblem


def _phi_on_a(problem, ind, normalized, trivial_reps, zetas):
    """Image of every A-member under the basis-inversion automorphism."""
    g = problem.group
    q = ind.modulus
    labelled = [
        ((blk.index, j), blk.basis[j], blk.vectors[j], True)
        for blk in normalized
        for j in range(blk.dimension)
    ] + [((t.index, 0), t.element, t.vector, False) for t in trivial_reps]
    basis_elems = [elem for _, elem, _, _ in labelled]
    n = len(basis_elems)
    if n != ind.rank:
        raise InvalidParameter("assembled basis has wrong rank (bug)")

    lookup = {}
    for exps in iproduct(range(q), repeat=n):
        elem = 0
        for b, e in zip(basis_elems, exps):
            elem = g.mul(elem, g.power(b, e))
        key = ind.coset_of(elem)
        if key in lookup:
            raise InvalidParameter("assembled basis is not independent (bug)")
        lookup[key] = (exps, elem)
    if len(lookup) != ind.quotient_group.order:
        raise InvalidParameter("assembled basis does not span (bug)")

    targets = []
    for label, elem, _, nontrivial in labelled:
        if nontrivial:
            targets.append(g.mul(zetas[label], g.inv(elem)))
        else:
            targets.append(elem)

    za_set = set(ind.z_cap_a)
    images = {}
    for a in problem.normal_part.members:
        exps, base = lookup[ind.coset_of(a)]
        w = g.mul(a, g.inv(base))
        if w not in za_set:
            raise InvalidParameter("canonical form residual not central (bug)")
        img = w
        for t, e in zip(targets, exps):
            img = g.mul(img, g.power(t, e))
        images[a] = img
    return images


def extend_automorphism(group, a_sub, b_sub, phi):
    """Extend an automorphism of the normal part A to all of G = AB.

    ``phi`` maps parent indices of A-members to parent indices.  The two
    preconditions are checked, not assumed: phi must be trivial on A ∩ B
    and must commute with conjugation by every element of B.  The
    extension sends a*b to phi(a)*b and is verified as an automorphism of
    the same order as phi on the table.
    """
    a_set = a_sub.member_set()
    b_set = b_sub.member_set()
    for x in a_sub.members:
        if x in b_set and phi[x] != x:
            raise NotTrivialOnIntersection(f"phi moves {x} in A ∩ B")
    for b in b_sub.members:
        for a in a_sub.members:
            if phi[group.conjugate(a, b)] != group.conjugate(phi[a], b):
                raise DoesNotCommuteWithAction(
                    f"phi fails to commute with conjugation by {b} at {a}"
                )
    images = [None] * group.order
    for g_elem in group.elements():
        for b in b_sub.members:
            a = group.mul(g_elem, group.inverse[b])
            if a in a_set:
                images[g_elem] = group.mul(phi[a], b)
                break
        if images[g_elem] is None:
            raise NotWellDefined(f"element {g_elem} has no AB decomposition")
    try:
        out = GroupMap(group, group, tuple(images), bijective=True)
    except NotAHomomorphism as exc:
        raise NotWellDefined(f"extension is not an automorphism: {exc}")
    a_order = _map_order_on(group, a_sub.members, phi)
    if out.map_order() != a_order:
        raise NotWellDefined("extension changed the automorphism order")
    return out


def _map_order_on(group, members, phi):
    out = 1
    index = {m: i for i, m in enumerate(members)}
    seen = [False] * len(members)
    for start in members:
        i = index[start]
        if seen[i]:
            continue
        length = 0
        x = start
        while not seen[index[x]]:
            seen[index[x]] = True
            x = phi[x]
            length += 1
        out = out * length // gcd(out, length)
    return out


def build_involution_class2(problem):
    """Order-2 automorphism of G = AB for a class-2 normal p-part.

    Runs the whole pipeline and verifies the result exhaustively on the
    table.  Raises TrivialAction when B centralises A (use the
    direct-product/abelian route instead), and HypothesisViolated with
    the failing hypothesis named otherwise.
    """
    g = problem.group
    a_sub = problem.normal_part
    b_sub = problem.complement_part
    z_set = problem.center_part.member_set()

    pe = _prime_power(a_sub.order)
    if pe is None:
        raise HypothesisViolated("normal part is not a p-group")
    p = pe[0]
    if p == 2:
        raise HypothesisViolated("normal part must be a p-group for odd p")
    a_group, a_to_parent = a_sub.as_group()
    if not set(derived_subgroup(a_group).members) <= center(a_group).member_set():
        raise HypothesisViolated("normal part has nilpotency class above 2")
    for x in a_sub.members:
        if x in b_sub.member_set() and x not in z_set:
            raise HypothesisViolated("A ∩ B is not central")

    ind = induced_action(problem)
    if ind.is_trivial():
        raise TrivialAction("complement acts trivially on the central quotient")

    b_group, b_to_parent = b_sub.as_group()
    zb = tuple(i for i, bp in enumerate(b_to_parent) if bp in z_set)
    zb_sub = Subgroup(b_group, zb)
    b_quot, _ = quotient(b_group, zb_sub)
    if not b_quot.is_abelian():
        raise HypothesisViolated("B/(Z ∩ B) is not abelian")
    if b_quot.order % p == 0:
        raise HypothesisViolated("B/(Z ∩ B) has order divisible by p")

    nontrivial = [m for m in ind.matrices_fp if not m.is_identity()]
    deco = decompose(nontrivial)
    blocks = deco.blocks

    normalized, trivial_reps = normalize_basis(problem, ind, blocks)
    zetas = solve_zeta(problem, normalized)
    phi = _phi_on_a(problem, ind, normalized, trivial_reps, zetas)

    _verify_phi_on_a(problem, ind, phi)
    phi_star = extend_automorphism(g, a_sub, b_sub, phi)
    cert = InvolutionCertificate(
        automorphism=phi_star,
        zeta=zetas,
        normalized_blocks=tuple(normalized),
        trivial_reps=trivial_reps,
        blocks=deco,
        problem=problem,
    )
    verify_involution_certificate(cert)
    return cert


def _verify_phi_on_a(problem, ind, phi):
    """phi is an order-2 automorphism of A, trivial on Z ∩ A, commuting
    with conjugation by every coset representative of B."""
    g = problem.group
    a_members = problem.normal_part.members
    a_group = ind.a_group
    try:
        gm = GroupMap(
            a_group,
            a_group,
            tuple(ind.parent_to_a[phi[p]] for p in ind.a_to_parent),
            bijective=True,
        )
    except NotAHomomorphism as exc:
        raise NotWellDefined(f"basis inversion is not an automorphism: {exc}")
    if gm.map_order() != 2:
        raise NotWellDefined("basis inversion does not have order 2")
    for z in ind.z_cap_a:
        if phi[z] != z:
            raise NotWellDefined("basis inversion moves a central element")
    for b in ind.coset_reps:
        for a in a_members:
            if phi[g.conjugate(a, b)] != g.conjugate(phi[a], b):
                raise DoesNotCommuteWithAction(
                    f"basis inversion fails to commute with conjugation by {b}"
                )


def build_involution_abelian(group, a_sub, b_sub):
    """Extend inversion on an abelian normal subgroup to an order-2 map of G.

    Needs A abelian and normal with |A| > 2, trivial A ∩ B, and exponent
    above 2 (inversion is the identity on exponent-2 groups).
    """
    if not a_sub.is_normal():
        raise HypothesisViolated("normal part is not normal")
    a_group, _ = a_sub.as_group()
    if not a_group.is_abelian():
        raise HypothesisViolated("normal part is not abelian")
    if a_sub.order <= 2:
        raise HypothesisViolated("normal part must have order above 2")
    inter = set(a_sub.members) & b_sub.member_set()
    if inter != {0}:
        raise HypothesisViolated("A ∩ B is not trivial")
    if a_group.exponent() <= 2:
        raise ExponentTwo("inversion is the identity on an exponent-2 group")
    phi = {a: group.inverse[a] for a in a_sub.members}
    out = extend_automorphism(group, a_sub, b_sub, phi)
    if out.map_order() != 2:
        raise NotWellDefined("inversion extension does not have order 2")
    return out


def verify_involution_certificate(cert):
    """Exhaustive table-level verification of a certificate.

    Checks on the full Cayley table: the map is a bijective homomorphism,
    squares to the identity without being the identity, fixes the center
    pointwise, and maps the normal part onto itself.
    """
    g = cert.problem.group
    images = np.asarray(cert.automorphism.images, dtype=np.intp)
    arr = g.np_table()
    if not np.array_equal(images[arr], arr[np.ix_(images, images)]):
        raise NotWellDefined("certificate map is not multiplicative")
    if len(set(cert.automorphism.images)) != g.order:
        raise NotWellDefined("certificate map is not bijective")
    ident = tuple(range(g.order))
    if cert.automorphism.images == ident:
        raise NotWellDefined("certificate map is the identity")
    squared = tuple(images[images[x]] for x in range(g.order))
    if squared != ident:
        raise NotWellDefined("certificate map does not square to the identity")
    for z in cert.problem.center_part.members:
        if cert.automorphism.images[z] != z:
            raise NotWellDefined("certificate map moves a central element")
    a_set = cert.problem.normal_part.member_set()
    if {int(images[a]) for a in a_set} != set(a_set):
        raise NotWellDefined("certificate map does not preserve the normal part")
    return True


def lift_matrix_to_automorphism(a, rows, target_order=None):
    """An automorphism of ``a`` inducing the given matrix, or raise.

    For an abelian homocyclic group the matrix (entries taken mod the
    common invariant factor) acts directly on basis coordinates.  For a
    class-2 p-group the matrix acts on A/Z(A) and the lift is found by
    exhaustive search over the central degrees of freedom; failures to
    lift are reported, not patched.
    """
    if a.is_abelian():
        factors, gens = abelian_basis(a)
        n = len(gens)
        if len(rows) != n:
            raise InvalidParameter("matrix dimension mismatch")
        coords = {}
        for exps in iproduct(*[range(d) for d in factors]):
            elem = 0
            for gen, e in zip(gens, exps):
                elem = a.mul(elem, a.power(gen, e))
            coords[elem] = exps
        images = [0] * a.order
        for elem, exps in coords.items():
            # row i of the matrix computes the coordinate mod factors[i]
            out = 0
            for i, gen in enumerate(gens):
                e = sum(c * x for c, x in zip(rows[i], exps)) % factors[i]
                out = a.mul(out, a.power(gen, e))
            images[elem] = out
        try:
            gm = GroupMap(a, a, tuple(images), bijective=True)
        except NotAHomomorphism as exc:
            raise InvalidParameter(f"matrix does not define an automorphism: {exc}")
        if target_order is not None and target_order % gm.map_order() != 0:
            raise InvalidParameter(
                f"lift has order {gm.map_order()}, incompatible with "
                f"{target_order}"
            )
        return gm.images

    z = center(a)
    q_group, proj = quotient(a, z)
    factors, gens = abelian_basis(q_group)
    if len(set(factors)) != 1:
        raise InvalidParameter("central quotient is not homocyclic")
    q = factors[0]
    n = len(gens)
    if len(rows) != n:
        raise InvalidParameter("matrix dimension mismatch")
    coords = {}
    for exps in iproduct(range(q), repeat=n):
        elem = 0
        for gen, e in zip(gens, exps):
            elem = q_group.mul(elem, q_group.power(gen, e))
        coords[elem] = exps
    reps = []
    for gen in gens:
        reps.append(min(x for x in a.elements() if proj(x) == gen))
    z_members = z.members

    def element_of_vector(vec):
        target_coset = next(k for k, v in coords.items() if v == tuple(vec))
        return min(x for x in a.elements() if proj(x) == target_coset)

    target_cosets = [element_of_vector(_mat_vec(rows, coords[proj(r)], q))
                     for r in reps]
    candidates = []
    for gen_imgs in iproduct(*[
        [a.mul(zc, t) for zc in z_members] for t in target_cosets
    ]):
        for z_img_gen in _central_generator_images(a, z):
            img = _map_from_generators(a, z, proj, coords, gens, reps,
                                       gen_imgs, z_img_gen, q)
            if img is None:
                continue
            try:
                gm = GroupMap(a, a, img, bijective=True)
            except NotAHomomorphism:
                continue
            if target_order is not None and target_order % gm.map_order() != 0:
                continue
            candidates.append(img)
        if candidates:
            break
    if not candidates:
        raise InvalidParameter("matrix does not lift to an automorphism")
    return candidates[0]


def _central_generator_images(a, z):
    """Possible images of a cyclic center's generator (any generator)."""
    if z.order == 1:
        return [(0, 0)]
    factors, gens = abelian_basis(z.as_group()[0])
    if len(gens) != 1:
        raise InvalidParameter("matrix lift supports cyclic centers only")
    _, to_parent = z.as_group()
    zgen = to_parent[gens[0]]
    orders = a.element_orders()
    return [(zgen, y) for y in z.members if orders[y] == orders[zgen]]


def _map_from_generators(a, z, proj, coords, gens, reps, gen_imgs, z_img_gen, q):
    zgen, zimg = z_img_gen
    ztable = {}
    x, y = 0, 0
    for _ in range(max(1, a.element_order(zgen) if z.order > 1 else 1)):
        ztable[x] = y
        x = a.mul(x, zgen)
        y = a.mul(y, zimg)
    if z.order > 1 and len(ztable) != z.order:
        return None
    images = [None] * a.order
    for elem in a.elements():
        exps = coords[proj(elem)]
        base = 0
        for r, e in zip(reps, exps):
            base = a.mul(base, a.power(r, e))
        w = a.mul(elem, a.inverse[base])
        if w not in ztable:
            return None
        out = ztable[w]
        for t, e in zip(gen_imgs, exps):
            out = a.mul(out, a.power(t, e))
        images[elem] = out
    return tuple(images)
