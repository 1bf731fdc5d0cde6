"""Linear algebra over prime fields: GL orders, complete reduction, companion bases.

Matrices are small (dimension at most 5 in practice), so everything is
exact integer arithmetic on tuples; irreducibility is certified by
exhaustive invariant-subspace search rather than a module-theoretic
algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import (
    ConditionViolated,
    InvalidParameter,
    NotCommuting,
    NotCoprime,
    NotInvertible,
    NotIrreducible,
)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_power(q):
    """Return (p, e) with q = p^e, or raise."""
    if q < 2:
        raise InvalidParameter("needs a prime power >= 2")
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise InvalidParameter(f"{q} is not a prime power")
            return p, e
    raise InvalidParameter(f"{q} is not a prime power")


@dataclass(frozen=True)
class FpMatrix:
    """A square matrix over the prime field F_p, entries reduced mod p."""

    p: int
    rows: tuple

    def __post_init__(self):
        if not _is_prime(self.p):
            raise InvalidParameter(f"{self.p} is not prime")
        rows = tuple(tuple(int(x) % self.p for x in row) for row in self.rows)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise InvalidParameter("matrix is not square")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self):
        return len(self.rows)

    def __matmul__(self, other):
        if other.p != self.p:
            raise InvalidParameter("field mismatch")
        p = self.p
        bt = tuple(zip(*other.rows))
        return FpMatrix(
            p,
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) % p for col in bt)
                for row in self.rows
            ),
        )

    def apply(self, vec):
        """Matrix-vector product (columns are images of basis vectors)."""
        p = self.p
        return tuple(sum(a * b for a, b in zip(row, vec)) % p for row in self.rows)

    def is_identity(self):
        return self.rows == identity_matrix(self.p, self.n).rows

    def det(self):
        return _det_mod(self.rows, self.p)


def identity_matrix(p, n):
    return FpMatrix(p, tuple(
        tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
    ))


def _det_mod(rows, p):
    n = len(rows)
    m = [list(r) for r in rows]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] % p), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        inv = pow(m[col][col], -1, p)
        det = det * m[col][col] % p
        for r in range(col + 1, n):
            f = m[r][col] * inv % p
            if f:
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[col])]
    return det % p


def gl_order(n, q):
    """|GL(n, q)| as an exact integer."""
    if n < 1:
        raise InvalidParameter("dimension must be at least 1")
    _prime_power(q)
    out = 1
    qn = q ** n
    for i in range(n):
        out *= qn - q ** i
    return out


def matrix_order(m):
    """Least k >= 1 with M^k = I, by iterated multiplication."""
    if m.det() == 0:
        raise NotInvertible("singular matrix has no multiplicative order")
    ident = identity_matrix(m.p, m.n)
    cap = gl_order(m.n, m.p)
    acc = m
    k = 1
    while acc.rows != ident.rows:
        acc = acc @ m
        k += 1
        if k > cap:
            raise NotInvertible("order exceeds |GL(n,p)| (bug)")
    return k


# -- subspace machinery -------------------------------------------------------


def rref(vectors, p):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(v) for v in vectors]
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    clean = [tuple(row) for row in rows[:r]]
    return clean, pivots


def in_span(basis_rref, pivots, vec, p):
    v = list(vec)
    for row, c in zip(basis_rref, pivots):
        if v[c]:
            f = v[c]
            v = [(a - f * b) % p for a, b in zip(v, row)]
    return not any(v)


def subspaces_of_dimension(n, p, k):
    """All k-dimensional subspaces of F_p^n, as rref basis tuples.

    Enumerates reduced echelon bases directly: one basis per subspace,
    in a fixed deterministic order.
    """
    if k == 0:
        yield ()
        return
    from itertools import combinations

    for pivots in combinations(range(n), k):
        free_positions = []
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, n):
                if c not in pivots:
                    free_positions.append((r, c))
        for values in product(range(p), repeat=len(free_positions)):
            rows = [[0] * n for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free_positions, values):
                rows[r][c] = v
            yield tuple(tuple(row) for row in rows)


def _invariant(basis, matrices, p):
    basis_rref, pivots = rref(basis, p)
    for m in matrices:
        for v in basis:
            if not in_span(basis_rref, pivots, m.apply(v), p):
                return False
    return True


def minimal_invariant_subspace(matrices, p, n):
    """A common invariant subspace of least dimension (1 <= dim < n)."""
    for k in range(1, n):
        for basis in subspaces_of_dimension(n, p, k):
            if _invariant(basis, matrices, p):
                return basis
    return None


@dataclass(frozen=True)
class Block:
    """An irreducible invariant block of a commuting matrix family."""

    basis: tuple  # ambient row vectors
    dimension: int
    trivial: bool


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple
    change_of_basis: FpMatrix  # stacked block bases, one row per vector


def _matrix_group(matrices, p, n):
    """Closure of the given matrices under multiplication."""
    ident = identity_matrix(p, n)
    seen = {ident.rows: ident}
    frontier = [ident]
    while frontier:
        cur = frontier.pop()
        for m in matrices:
            nxt = cur @ m
            if nxt.rows not in seen:
                seen[nxt.rows] = nxt
                frontier.append(nxt)
    return list(seen.values())


def restrict_to_block(m, basis, p):
    """Matrix of the action on the span of ``basis`` in that basis."""
    basis_rref, pivots = rref(basis, p)
    cols = []
    for v in basis:
        img = m.apply(v)
        coeffs = _coordinates(basis, img, p)
        if coeffs is None:
            raise NotIrreducible("block is not invariant under the matrix")
        cols.append(coeffs)
    k = len(basis)
    return FpMatrix(p, tuple(tuple(cols[j][i] for j in range(k)) for i in range(k)))


def _coordinates(basis, vec, p):
    """Coefficients expressing vec in the given (independent) basis."""
    k = len(basis)
    n = len(vec)
    aug = [list(col) for col in zip(*basis)]  # n x k
    for i in range(n):
        aug[i].append(vec[i] % p)
    rows, pivots = rref([tuple(r) for r in aug], p)
    coeffs = [0] * k
    for row, c in zip(rows, pivots):
        if c == k:
            return None  # inconsistent: vec outside the span
        coeffs[c] = row[k]
    return tuple(coeffs)


def decompose(action_matrices, check_commuting=True):
    """Complete reduction of a commuting coprime matrix family.

    Splits F_p^n into irreducible invariant blocks by repeatedly finding
    a minimal invariant subspace and an invariant complement via the
    averaged-projection argument (the group order is a unit mod p, so the
    averaging idempotent exists).  Blocks on which every input matrix acts
    as the identity are flagged trivial; for each non-trivial block the
    restricted action group is cyclic, as Schur's lemma demands for a
    commuting family, and this is asserted.
    """
    mats = list(action_matrices)
    if not mats:
        raise InvalidParameter("need at least one matrix")
    p = mats[0].p
    n = mats[0].n
    for m in mats:
        if m.p != p or m.n != n:
            raise InvalidParameter("matrices must share field and dimension")
        if m.det() == 0:
            raise NotInvertible("decomposition needs invertible matrices")
    if check_commuting:
        for i, a in enumerate(mats):
            for b in mats[i + 1:]:
                if (a @ b).rows != (b @ a).rows:
                    raise NotCommuting("matrices must pairwise commute")
    group = _matrix_group(mats, p, n)
    if len(group) % p == 0:
        raise NotCoprime("matrix group order divisible by p")

    ambient = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    blocks = []

    def split(basis):
        k = len(basis)
        restricted = [restrict_to_block(m, basis, p) for m in mats]
        sub = minimal_invariant_subspace(
            [m for m in restricted if not m.is_identity()] or restricted, p, k
        )
        if sub is None:
            trivial = all(m.is_identity() for m in restricted)
            if not trivial:
                _assert_cyclic(restricted, p, k)
            blocks.append(
                Block(tuple(basis), k, trivial)
            )
            return
        w_basis = tuple(_lift(v, basis, p) for v in sub)
        comp = _invariant_complement(restricted, sub, p, k, basis)
        split(w_basis)
        split(comp)

    split(ambient)
    change = FpMatrix(p, tuple(v for b in blocks for v in b.basis))
    if change.det() == 0:
        raise InvalidParameter("block bases do not span (bug)")
    return BlockDecomposition(tuple(blocks), change)


def _lift(coords, basis, p):
    n = len(basis[0])
    out = [0] * n
    for c, v in zip(coords, basis):
        for i in range(n):
            out[i] = (out[i] + c * v[i]) % p
    return tuple(out)


def _invariant_complement(restricted, sub, p, k, ambient_basis):
    """Invariant complement of ``sub`` inside the block, in ambient vectors."""
    sub_rref, pivots = rref(sub, p)
    others = [c for c in range(k) if c not in pivots]
    full = list(sub_rref) + [
        tuple(1 if i == c else 0 for i in range(k)) for c in others
    ]
    # projection onto sub along the chosen complement, in block coordinates
    d = len(sub_rref)
    basis_mat = [list(col) for col in zip(*full)]  # k x k, columns = basis
    inv_basis = _matrix_inverse(basis_mat, p)
    proj = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            proj[i][j] = sum(full[t][i] * inv_basis[t][j] for t in range(d)) % p
    proj_m = FpMatrix(p, tuple(tuple(row) for row in proj))
    # average over the restricted group to make the projection equivariant
    rgroup = _matrix_group(restricted, p, k)
    inv_order = pow(len(rgroup) % p, -1, p)
    acc = [[0] * k for _ in range(k)]
    for h in rgroup:
        h_inv = _matrix_inverse([list(r) for r in h.rows], p)
        term = (FpMatrix(p, tuple(tuple(r) for r in h_inv)) @ proj_m) @ h
        for i in range(k):
            for j in range(k):
                acc[i][j] = (acc[i][j] + term.rows[i][j]) % p
    avg = FpMatrix(p, tuple(
        tuple(x * inv_order % p for x in row) for row in acc
    ))
    kernel = _null_space(avg, p)
    if len(kernel) != k - d:
        raise InvalidParameter("averaged projection has wrong rank (bug)")
    return tuple(_lift(v, ambient_basis, p) for v in kernel)


def _matrix_inverse(rows, p):
    n = len(rows)
    m = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, n) if m[i][c] % p), None)
        if pivot is None:
            raise NotInvertible("matrix not invertible")
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(n):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
    return [row[n:] for row in m]


def _null_space(m, p):
    rows, pivots = rref(m.rows, p)
    n = m.n
    free = [c for c in range(n) if c not in pivots]
    out = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for row, c in zip(rows, pivots):
            v[c] = (-row[fc]) % p
        out.append(tuple(v))
    return out


def _assert_cyclic(restricted, p, k):
    rgroup = _matrix_group(restricted, p, k)
    top = max(matrix_order(m) for m in rgroup)
    if top != len(rgroup):
        raise NotIrreducible("restricted block action is not cyclic (bug)")


@dataclass(frozen=True)
class CompanionBasis:
    """Cyclic basis data: M maps basis[i] to basis[i+1] and basis[-1] to
    the combination with exponents ``bottom`` (the companion bottom row)."""

    basis: tuple
    bottom: tuple

    @property
    def bottom_sum(self):
        return sum(self.bottom)


def cyclic_basis(m, block):
    """Companion-form basis of an irreducible non-trivial block.

    Any non-zero vector of an irreducible block is cyclic; the first
    block basis vector is used.  Asserts that the bottom-row sum is not
    congruent to 1 mod p (equivalently det(M - I) is non-zero on the
    block, which irreducible non-trivial actions guarantee).
    """
    p = m.p
    basis = [block.basis[0]]
    for _ in range(block.dimension - 1):
        basis.append(m.apply(basis[-1]))
    closing = m.apply(basis[-1])
    coeffs = _coordinates(tuple(basis), closing, p)
    if coeffs is None:
        raise NotIrreducible("orbit of the cyclic vector is not a basis")
    basis_rref, pivots = rref(tuple(basis), p)
    if len(basis_rref) != block.dimension:
        raise NotIrreducible("cyclic vector generates a proper subspace")
    if sum(coeffs) % p == 1 % p:
        raise ConditionViolated("companion bottom-row sum is 1 mod p")
    return CompanionBasis(tuple(basis), tuple(coeffs))
