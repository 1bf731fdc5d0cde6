"""Built-in group catalog and the construction mini-grammar.

Construction specs::

    cyclic:n
    abelian:d1,d2,...
    extraspecial:p:p        (exponent p)
    extraspecial:p:p2       (exponent p^2)
    dp:(SPEC)x(SPEC)        direct product
    sdp:(SPEC)x(SPEC):matrix=p,n,e11,e12,...,enn

The semidirect matrix acts on the normal part's central quotient (on the
group itself when it is abelian homocyclic, entries taken mod the common
invariant factor); the complement must be generated by its element 1 and
acts through the lifted automorphism.  The built-in odd-order catalog is
generated from these constructors and is explicitly not a census of all
groups of each order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameter
from .groups import (
    abelian,
    action_from_generator,
    cyclic,
    direct_product,
    extraspecial,
    semidirect_product,
)
from .involution import lift_matrix_to_automorphism


def _split_product(body):
    """Split '(A)x(B)rest' into (A, B, rest) respecting nesting."""
    if not body.startswith("("):
        raise InvalidParameter(f"expected '(' in {body!r}")
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                first = body[1:i]
                rest = body[i + 1:]
                break
    else:
        raise InvalidParameter(f"unbalanced parentheses in {body!r}")
    if not rest.startswith("x("):
        raise InvalidParameter(f"expected 'x(' after first factor in {body!r}")
    depth = 0
    for j in range(1, len(rest)):
        if rest[j] == "(":
            depth += 1
        elif rest[j] == ")":
            depth -= 1
            if depth == 0:
                second = rest[2:j]
                tail = rest[j + 1:]
                return first, second, tail
    raise InvalidParameter(f"unbalanced parentheses in {body!r}")


def build_group(spec, cap=None):
    """Construct a group from a spec string."""
    spec = spec.strip()
    if spec == "__two_block__":
        return build_two_block_instance()
    if spec == "__exceptional__":
        return build_exceptional_instance()
    if spec.startswith("cyclic:"):
        return cyclic(int(spec[7:]))
    if spec.startswith("abelian:"):
        return abelian([int(x) for x in spec[8:].split(",")], cap=cap)
    if spec.startswith("extraspecial:"):
        parts = spec.split(":")
        if len(parts) != 3 or parts[2] not in ("p", "p2"):
            raise InvalidParameter(f"bad extraspecial spec {spec!r}")
        return extraspecial(int(parts[1]), parts[2] == "p")
    if spec.startswith("dp:"):
        a_spec, b_spec, tail = _split_product(spec[3:])
        if tail:
            raise InvalidParameter(f"unexpected trailing {tail!r}")
        g = direct_product(build_group(a_spec, cap), build_group(b_spec, cap), cap=cap)
        g.construction = spec
        return g
    if spec.startswith("sdp:"):
        a_spec, b_spec, tail = _split_product(spec[4:])
        a = build_group(a_spec, cap)
        b = build_group(b_spec, cap)
        if not tail:
            from .groups import trivial_action

            g = semidirect_product(a, b, trivial_action(a, b), cap=cap)
            g.construction = spec
            return g
        if not tail.startswith(":matrix="):
            raise InvalidParameter(f"bad semidirect tail {tail!r}")
        nums = [int(x) for x in tail[8:].split(",")]
        if len(nums) < 2:
            raise InvalidParameter("matrix spec needs p, n, entries")
        p, n = nums[0], nums[1]
        entries = nums[2:]
        if len(entries) != n * n:
            raise InvalidParameter(f"matrix spec needs {n * n} entries")
        rows = tuple(tuple(entries[i * n + j] for j in range(n)) for i in range(n))
        phi = lift_matrix_to_automorphism(a, rows, target_order=b.order)
        action = action_from_generator(a, b, phi)
        g = semidirect_product(a, b, action, cap=cap)
        g.construction = spec
        return g
    raise InvalidParameter(f"unrecognised group spec {spec!r}")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    spec: str

    def build(self, cap=None):
        g = build_group(self.spec, cap=cap)
        g.name = self.name
        g.construction = self.spec
        return g


_S3 = "sdp:(cyclic:3)x(cyclic:2):matrix=3,1,2"
_D4 = "sdp:(cyclic:4)x(cyclic:2):matrix=2,1,3"
_A4 = "sdp:(abelian:2,2)x(cyclic:3):matrix=2,2,0,1,1,1"
_C7C3 = "sdp:(cyclic:7)x(cyclic:3):matrix=7,1,2"
_C13C3 = "sdp:(cyclic:13)x(cyclic:3):matrix=13,1,3"
_F39 = _C13C3


def teaching_catalog():
    """Small groups exercised by the lemma property suites."""
    entries = [
        CatalogEntry("C1", "cyclic:1"),
        CatalogEntry("C2", "cyclic:2"),
        CatalogEntry("C3", "cyclic:3"),
        CatalogEntry("C4", "cyclic:4"),
        CatalogEntry("C2xC2", "abelian:2,2"),
        CatalogEntry("C5", "cyclic:5"),
        CatalogEntry("C6", "cyclic:6"),
        CatalogEntry("S3", _S3),
        CatalogEntry("C7", "cyclic:7"),
        CatalogEntry("C8", "cyclic:8"),
        CatalogEntry("C2xC4", "abelian:2,4"),
        CatalogEntry("C2xC2xC2", "abelian:2,2,2"),
        CatalogEntry("D4", _D4),
        CatalogEntry("C9", "cyclic:9"),
        CatalogEntry("C3xC3", "abelian:3,3"),
        CatalogEntry("C10", "cyclic:10"),
        CatalogEntry("D5", "sdp:(cyclic:5)x(cyclic:2):matrix=5,1,4"),
        CatalogEntry("C12", "cyclic:12"),
        CatalogEntry("A4", _A4),
        CatalogEntry("D6", "sdp:(cyclic:6)x(cyclic:2):matrix=3,1,5"),
        CatalogEntry("C14", "cyclic:14"),
        CatalogEntry("C15", "cyclic:15"),
        CatalogEntry("C16", "cyclic:16"),
        CatalogEntry("C2xC8", "abelian:2,8"),
        CatalogEntry("C4xC4", "abelian:4,4"),
        CatalogEntry("C18", "cyclic:18"),
        CatalogEntry("C20", "cyclic:20"),
        CatalogEntry("C7:C3", _C7C3),
        CatalogEntry("C21", "cyclic:21"),
        CatalogEntry("C22", "cyclic:22"),
        CatalogEntry("C24", "cyclic:24"),
        CatalogEntry("C25", "cyclic:25"),
        CatalogEntry("C5xC5", "abelian:5,5"),
        CatalogEntry("C26", "cyclic:26"),
        CatalogEntry("ES27+", "extraspecial:3:p"),
        CatalogEntry("ES27-", "extraspecial:3:p2"),
        CatalogEntry("C27", "cyclic:27"),
        CatalogEntry("C3xC9", "abelian:3,9"),
        CatalogEntry("C3xC3xC3", "abelian:3,3,3"),
        CatalogEntry("C28", "cyclic:28"),
        CatalogEntry("C30", "cyclic:30"),
        CatalogEntry("C3xS3", f"dp:(cyclic:3)x({_S3})"),
        CatalogEntry("C13:C3", _C13C3),
        CatalogEntry("C5xS3", f"dp:(cyclic:5)x({_S3})"),
        CatalogEntry("C5^2:C3", "sdp:(abelian:5,5)x(cyclic:3):matrix=5,2,0,4,1,4"),
        CatalogEntry("C2xA4", f"dp:(cyclic:2)x({_A4})"),
        CatalogEntry("ES125+", "extraspecial:5:p"),
    ]
    return entries


def odd_catalog(max_order=243):
    """Odd-order groups: all abelian shapes plus curated constructions.

    Abelian groups come from the invariant-factor shapes of every odd
    order up to the bound; the non-abelian layer covers extraspecial
    groups and semidirect products from small classified matrix actions.
    The catalog is deliberately not a complete census.
    """
    entries = []
    for n in range(3, max_order + 1, 2):
        for shape in _abelian_shapes(n):
            spec = "abelian:" + ",".join(str(d) for d in shape)
            name = "x".join(f"C{d}" for d in shape)
            entries.append(CatalogEntry(name, spec))
    nonabelian = [
        CatalogEntry("C7:C3", _C7C3),
        CatalogEntry("ES27+", "extraspecial:3:p"),
        CatalogEntry("ES27-", "extraspecial:3:p2"),
        CatalogEntry("C13:C3", _C13C3),
        CatalogEntry("C11:C5", "sdp:(cyclic:11)x(cyclic:5):matrix=11,1,3"),
        CatalogEntry("C19:C3", "sdp:(cyclic:19)x(cyclic:3):matrix=19,1,7"),
        CatalogEntry("C5xC7:C3", f"dp:(cyclic:5)x({_C7C3})"),
        CatalogEntry("C3xC7:C3", f"dp:(cyclic:3)x({_C7C3})"),
        CatalogEntry("C5^2:C3", "sdp:(abelian:5,5)x(cyclic:3):matrix=5,2,0,4,1,4"),
        CatalogEntry("C3xES27+", "dp:(cyclic:3)x(extraspecial:3:p)"),
        CatalogEntry("C3xES27-", "dp:(cyclic:3)x(extraspecial:3:p2)"),
        CatalogEntry("C27:C3", "sdp:(cyclic:27)x(cyclic:3):matrix=27,1,10"),
        CatalogEntry("C3^3:C3", "sdp:(abelian:3,3,3)x(cyclic:3):"
                                "matrix=3,3,1,1,0,0,1,1,0,0,1"),
        CatalogEntry("C9:C3", "sdp:(cyclic:9)x(cyclic:3):matrix=9,1,4"),
        CatalogEntry("C3xC13:C3", f"dp:(cyclic:3)x({_C13C3})"),
        CatalogEntry("C37:C3", "sdp:(cyclic:37)x(cyclic:3):matrix=37,1,10"),
        CatalogEntry("C5xC5^2:C3",
                     "dp:(cyclic:5)x(sdp:(abelian:5,5)x(cyclic:3):"
                     "matrix=5,2,0,4,1,4)"),
        CatalogEntry("ES125+", "extraspecial:5:p"),
        CatalogEntry("ES125-", "extraspecial:5:p2"),
        CatalogEntry("C7^2:C3", "sdp:(abelian:7,7)x(cyclic:3):matrix=7,2,2,0,0,4"),
        CatalogEntry("C31:C5", "sdp:(cyclic:31)x(cyclic:5):matrix=31,1,2"),
        CatalogEntry("C9xC7:C3", f"dp:(abelian:9)x({_C7C3})"),
        CatalogEntry("C41:C5", "sdp:(cyclic:41)x(cyclic:5):matrix=41,1,10"),
        CatalogEntry("C3^2xC7:C3", f"dp:(abelian:3,3)x({_C7C3})"),
        CatalogEntry("C29:C7", "sdp:(cyclic:29)x(cyclic:7):matrix=29,1,7"),
        CatalogEntry("C9xES27+", "dp:(abelian:9)x(extraspecial:3:p)"),
        CatalogEntry("C3^2xES27+", "dp:(abelian:3,3)x(extraspecial:3:p)"),
        CatalogEntry("C5xC7^2:C3",
                     "dp:(cyclic:5)x(sdp:(abelian:7,7)x(cyclic:3):"
                     "matrix=7,2,2,0,0,4)"),
        CatalogEntry("C73:C3", "sdp:(cyclic:73)x(cyclic:3):matrix=73,1,8"),
    ]
    entries.extend(e for e in nonabelian if _spec_order(e.spec) <= max_order)
    entries.sort(key=lambda e: (_spec_order(e.spec), e.name))
    return entries


def _abelian_shapes(n):
    """Invariant-factor shapes (ascending divisibility chains) of order n."""
    from .enumeration import number_profile

    profile = number_profile(n)
    per_prime = []
    for p, e in profile.factorization:
        per_prime.append([(p, part) for part in _partitions(e)])
    shapes = []

    def merge(idx, acc):
        if idx == len(per_prime):
            # acc: list of (p, partition); build divisor chain
            longest = max(len(part) for _, part in acc)
            factors = []
            for k in range(longest):
                d = 1
                for p, part in acc:
                    padded = [0] * (longest - len(part)) + list(part)
                    d *= p ** padded[k]
                if d > 1:
                    factors.append(d)
            shapes.append(tuple(factors))
            return
        for choice in per_prime[idx]:
            merge(idx + 1, acc + [choice])

    merge(0, [])
    return sorted(set(shapes))


def _partitions(n):
    """Partitions of n as ascending tuples."""
    out = []

    def rec(remaining, most, acc):
        if remaining == 0:
            out.append(tuple(reversed(acc)))
            return
        for k in range(min(remaining, most), 0, -1):
            rec(remaining - k, k, acc + [k])

    rec(n, n, [])
    return out


def _spec_order(spec):
    if spec.startswith("cyclic:"):
        return int(spec[7:])
    if spec.startswith("abelian:"):
        out = 1
        for d in spec[8:].split(","):
            out *= int(d)
        return out
    if spec.startswith("extraspecial:"):
        return int(spec.split(":")[1]) ** 3
    if spec.startswith(("dp:", "sdp:")):
        body = spec[3:] if spec.startswith("dp:") else spec[4:]
        a_spec, b_spec, _ = _split_product(body)
        return _spec_order(a_spec) * _spec_order(b_spec)
    raise InvalidParameter(f"unrecognised group spec {spec!r}")


# -- constructive extension instances -----------------------------------------


def involution_instances():
    """Split extensions exercising the order-2 extension pipeline."""
    return [
        CatalogEntry("ES27+:C2", "sdp:(extraspecial:3:p)x(cyclic:2):matrix=3,2,2,0,0,2"),
        CatalogEntry("ES27+:C4", "sdp:(extraspecial:3:p)x(cyclic:4):matrix=3,2,0,2,1,0"),
        CatalogEntry("C9xC3:C2", "sdp:(abelian:3,9)x(cyclic:2):matrix=3,2,1,1,0,8"),
        CatalogEntry("C25^2:C3", "sdp:(abelian:25,25)x(cyclic:3):matrix=5,2,0,24,1,24"),
        CatalogEntry("C3^4:C4^2", "__two_block__"),
    ]


def build_two_block_instance():
    """C_3^4 acted on by C_4 x C_4, one order-4 block per factor."""
    from .groups import ActionSpec, compose_images

    a = abelian([3, 3, 3, 3])
    b = direct_product(cyclic(4), cyclic(4))
    m1 = ((0, 2, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    m2 = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 2), (0, 0, 1, 0))
    phi1 = lift_matrix_to_automorphism(a, m1, target_order=4)
    phi2 = lift_matrix_to_automorphism(a, m2, target_order=4)
    ident = tuple(range(a.order))
    maps = []
    for idx in range(16):
        i, j = divmod(idx, 4)
        m = ident
        for _ in range(i):
            m = compose_images(m, phi1)
        for _ in range(j):
            m = compose_images(m, phi2)
        maps.append(m)
    action = ActionSpec(b, a, tuple(maps))
    g = semidirect_product(a, b, action)
    g.name = "C3^4:C4^2"
    g.construction = "__two_block__"
    return g


def build_exceptional_instance():
    """Split extension of C_3^3 by the non-abelian group of order 39.

    The order-13 matrix is the companion of a cubic factor of x^13 - 1
    over F_3; conjugation by the order-3 generator cubes it, which the
    cube-of-the-matrix automorphism realises on the module.
    """
    from .groups import ActionSpec, compose_images

    a = abelian([3, 3, 3])
    b = build_group(_F39)  # C13 : C3
    m13 = _order13_matrix_f3()
    phi13 = lift_matrix_to_automorphism(a, m13, target_order=13)
    frob = _frobenius_matrix_f3(m13)
    phi3 = lift_matrix_to_automorphism(a, frob, target_order=3)
    ident = tuple(range(a.order))
    # b elements are pairs (x, y) = x * 3 + y with x in C13, y in C3;
    # conjugation by (x, y) acts as phi13^x followed by phi3^y
    maps = []
    for idx in range(39):
        x, y = divmod(idx, 3)
        m = ident
        for _ in range(x):
            m = compose_images(m, phi13)
        for _ in range(y):
            m = compose_images(m, phi3)
        maps.append(m)
    action = ActionSpec(b, a, tuple(maps))
    g = semidirect_product(a, b, action)
    g.name = "C3^3:F39"
    g.construction = "__exceptional__"
    return g


def _order13_matrix_f3():
    """Companion matrix of an irreducible cubic dividing x^13 - 1 over F_3."""
    for c0 in range(3):
        for c1 in range(3):
            for c2 in range(3):
                # x^3 = c2 x^2 + c1 x + c0
                if not _cubic_irreducible_f3(c0, c1, c2):
                    continue
                rows = ((0, 0, c0), (1, 0, c1), (0, 1, c2))
                if _matrix_order_f3(rows) == 13:
                    return rows
    raise InvalidParameter("no order-13 companion matrix found (bug)")


def _cubic_irreducible_f3(c0, c1, c2):
    # x^3 - c2 x^2 - c1 x - c0 has no root in F_3
    for x in range(3):
        if (x ** 3 - c2 * x * x - c1 * x - c0) % 3 == 0:
            return False
    return True


def _matrix_order_f3(rows):
    from .linalg import FpMatrix, matrix_order

    return matrix_order(FpMatrix(3, rows))


def _frobenius_matrix_f3(m13):
    """A matrix T of order 3 with T^-1 M T = M^9, by exhaustive search.

    The exponent 9 is the inverse of 3 mod 13, matching the composition
    convention of ActionSpec (apply the first conjugation first).
    """
    from .linalg import FpMatrix

    m = FpMatrix(3, m13)
    m9 = m
    for _ in range(8):
        m9 = m9 @ m
    from itertools import product as iproduct

    for entries in iproduct(range(3), repeat=9):
        rows = (entries[0:3], entries[3:6], entries[6:9])
        t = FpMatrix(3, rows)
        if t.det() == 0:
            continue
        if (t @ t @ t).is_identity() and not t.is_identity():
            if (m @ t).rows == (t @ m9).rows:
                return rows
    raise InvalidParameter("no conjugating order-3 matrix found (bug)")
