"""Brute-force oracles, independent of the production algorithms.

Everything here trades speed for obviousness: exhaustive loops over
elements, permutations, or assignments, with no pruning beyond what a
definition forces.
"""

from __future__ import annotations

from itertools import permutations, product


def brute_center(g):
    return sorted(
        z
        for z in range(g.order)
        if all(g.mul(z, x) == g.mul(x, z) for x in range(g.order))
    )


def brute_commutator_closure(g):
    comms = {
        g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y))
        for x in range(g.order)
        for y in range(g.order)
    }
    members = set(comms) | {0}
    changed = True
    while changed:
        changed = False
        for a in list(members):
            for b in list(members):
                c = g.mul(a, b)
                if c not in members:
                    members.add(c)
                    changed = True
    return sorted(members)


def element_order_census(g):
    out = {}
    for x in range(g.order):
        k = 1
        y = x
        while y != 0:
            y = g.mul(y, x)
            k += 1
        out[k] = out.get(k, 0) + 1
    return out


def brute_subgroups_of_order(g, k):
    """All order-k subgroups, found by closing every subset seed (slow)."""
    found = set()
    seeds = [[x] for x in range(1, g.order)] + [
        [x, y] for x in range(1, g.order) for y in range(x + 1, g.order)
    ]
    for seed in seeds:
        members = {0, *seed}
        changed = True
        while changed and len(members) <= k:
            changed = False
            for a in list(members):
                for b in list(members):
                    c = g.mul(a, b)
                    if c not in members:
                        members.add(c)
                        changed = True
        if len(members) == k:
            found.add(tuple(sorted(members)))
    return sorted(found)


def all_homomorphisms(src, dst):
    """Every homomorphism as an image tuple, by exhaustive DFS.

    Assigns images element by element in index order; a partial
    assignment is abandoned as soon as some fully-assigned product
    violates the law.  No generator choice, no invariants.
    """
    n, m = src.order, dst.order
    images = [-1] * n
    images[0] = 0
    out = []

    def consistent(x):
        for y in range(n):
            if images[y] < 0:
                continue
            for a, b in ((x, y), (y, x)):
                z = src.mul(a, b)
                if images[z] >= 0 and dst.mul(images[a], images[b]) != images[z]:
                    return False
        return True

    def rec(x):
        if x == n:
            out.append(tuple(images))
            return
        if images[x] >= 0:
            rec(x + 1)
            return
        for c in range(m):
            images[x] = c
            if consistent(x):
                rec(x + 1)
            images[x] = -1

    rec(1)
    return out


def brute_automorphisms(g):
    """All bijective homomorphisms of g, via the exhaustive DFS."""
    return [phi for phi in all_homomorphisms(g, g) if len(set(phi)) == g.order]


def automorphisms_by_permutation_filter(g):
    """Literal filter over all permutations fixing 0 (tiny orders only)."""
    out = []
    for rest in permutations(range(1, g.order)):
        phi = (0,) + rest
        if all(
            phi[g.mul(x, y)] == g.mul(phi[x], phi[y])
            for x in range(g.order)
            for y in range(g.order)
        ):
            out.append(phi)
    return out


def brute_hom_count(a, b):
    """|Hom(A, B)| by exhaustive DFS over image assignments."""
    return len(all_homomorphisms(a, b))


def brute_invertible_matrix_count(n, q):
    """Count invertible n x n matrices over F_q by enumerating all of them."""
    count = 0
    for entries in product(range(q), repeat=n * n):
        rows = [list(entries[i * n:(i + 1) * n]) for i in range(n)]
        if _det_mod(rows, q) != 0:
            count += 1
    return count


def _det_mod(rows, q):
    n = len(rows)
    m = [row[:] for row in rows]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] % q), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        inv = pow(m[col][col], -1, q)
        det = det * m[col][col] % q
        for r in range(col + 1, n):
            f = m[r][col] * inv % q
            if f:
                m[r] = [(a - f * b) % q for a, b in zip(m[r], m[col])]
    return det % q


def invariant_lines(matrix_rows, p):
    """All projective lines of F_p^n fixed setwise by the matrix."""
    n = len(matrix_rows)
    lines = []
    seen = set()
    for vec in product(range(p), repeat=n):
        if all(v == 0 for v in vec):
            continue
        canon = _scale_canonical(vec, p)
        if canon in seen:
            continue
        seen.add(canon)
        img = tuple(
            sum(matrix_rows[i][j] * vec[j] for j in range(n)) % p for i in range(n)
        )
        if all(v == 0 for v in img):
            continue
        if _scale_canonical(img, p) == canon:
            lines.append(canon)
    return lines


def _scale_canonical(vec, p):
    lead = next(v for v in vec if v)
    inv = pow(lead, -1, p)
    return tuple(v * inv % p for v in vec)


def brute_central_automorphisms(g, auts):
    """Automorphisms whose displacement map lands in the brute center."""
    z = set(brute_center(g))
    return [
        phi
        for phi in auts
        if all(g.mul(g.inv(x), phi[x]) in z for x in range(g.order))
    ]
