"""Structural property sweeps across a group catalog.

Each check pairs a computed quantity with an independent brute-force
route and reports per (group, check) with a counterexample payload on
failure; nothing is asserted silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .abelian import central_automorphism_count
from .autengine import automorphism_group, inner_automorphisms
from .errors import ToolkitError
from .groups import compose_images, quotient
from .structure import (
    center,
    central_quotient_profile,
    characteristic_elementary_abelian,
    derived_subgroup,
    find_complement,
    is_characteristic,
    normal_subgroups,
    sylow,
    _prime_divisors,
)


@dataclass(frozen=True)
class SuiteResult:
    group_name: str
    check: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class SuiteReport:
    results: tuple

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.passed]

    def summary(self):
        by_check = {}
        for r in self.results:
            ok, total = by_check.get(r.check, (0, 0))
            by_check[r.check] = (ok + (1 if r.passed else 0), total + 1)
        return by_check


def run_property_suites(groups, aut_budget=2_000_000):
    """Run every structural check against every supplied group."""
    results = []
    for g in groups:
        aut = automorphism_group(g, budget=aut_budget)
        results.extend(_check_inner_layer(g, aut))
        results.extend(_check_central_count(g, aut))
        results.extend(_check_central_quotient(g))
        results.extend(_check_coprime_action(g, aut))
        results.extend(_check_sylow(g))
        results.extend(_check_characteristic_subgroup(g, aut))
    return SuiteReport(tuple(results))


def _result(g, check, passed, detail=""):
    return SuiteResult(g.name, check, passed, detail)


def _check_inner_layer(g, aut):
    """Inn size, normality of Inn inside Aut, and the central-inner identity."""
    out = []
    inn = inner_automorphisms(g)
    z = center(g)
    expected = g.order // z.order
    out.append(
        _result(
            g,
            "inner-count",
            len(inn.automorphisms) == expected,
            f"|Inn| = {len(inn.automorphisms)}, |G|/|Z| = {expected}",
        )
    )
    if aut.elements is not None:
        inn_set = set(inn.automorphisms)
        ok = inn_set <= set(aut.elements)
        for t in aut.generators:
            t_inv = _inverse(t)
            for i in inn.automorphisms:
                conj = compose_images(compose_images(t_inv, i), t)
                if conj not in inn_set:
                    ok = False
                    break
            if not ok:
                break
        out.append(_result(g, "inner-normal", ok, ""))
    return out


def _inverse(images):
    out = [0] * len(images)
    for x, v in enumerate(images):
        out[v] = x
    return tuple(out)


def _check_central_count(g, aut):
    """Central automorphism count: Hom formula against enumeration, and
    the Cent ∩ Inn = Z(Inn) identity."""
    if aut.elements is None:
        return [_result(g, "central-count", False, "Aut not materialised")]
    report = central_automorphism_count(g, aut)
    out = [
        _result(
            g,
            "central-inner-identity",
            report.cent_inn_equals_center_inn,
            "",
        )
    ]
    if report.via_hom is not None:
        out.append(
            _result(
                g,
                "central-count",
                report.via_hom == report.via_enumeration,
                f"hom formula {report.via_hom}, enumeration {report.via_enumeration}",
            )
        )
    else:
        out.append(
            _result(g, "central-count", True, "abelian direct factor present; "
                                              "formula not applicable")
        )
    return out


def _check_central_quotient(g):
    """For a non-abelian group whose central quotient is an abelian p-group,
    the two largest invariant factors agree."""
    profile = central_quotient_profile(g)
    if g.is_abelian() or not (profile.is_p_group and profile.abelian):
        return [
            _result(g, "central-quotient-rank", True,
                    "not a non-abelian group with abelian p-group quotient")
        ]
    return [
        _result(
            g,
            "central-quotient-rank",
            profile.rank_condition_holds,
            f"invariants {profile.invariant_factors}",
        )
    ]


def _check_coprime_action(g, aut, order_limit=100):
    """A coprime-order automorphism trivial on a normal subgroup and on its
    quotient cosets is the identity (exhaustive for orders <= 100)."""
    if g.order > order_limit:
        return [_result(g, "coprime-action", True, "above exhaustive bound")]
    if aut.elements is None:
        return [_result(g, "coprime-action", False, "Aut not materialised")]
    from .groups import Subgroup, permutation_order

    ident = tuple(range(g.order))
    for members in normal_subgroups(g):
        mset = set(members)
        cosets = {}
        for x in g.elements():
            rep = min(g.mul(x, m) for m in members)
            cosets[x] = rep
        for phi in aut.elements:
            if phi == ident:
                continue
            if gcd(permutation_order(phi), g.order) != 1:
                continue
            if any(phi[m] != m for m in members):
                continue
            if any(cosets[phi[x]] != cosets[x] for x in g.elements()):
                continue
            return [
                _result(
                    g,
                    "coprime-action",
                    False,
                    f"counterexample: N of order {len(members)}, phi {phi}",
                )
            ]
    return [_result(g, "coprime-action", True, "")]


def _check_sylow(g):
    """Sylow counts are 1 mod p and a normal Sylow subgroup has a complement."""
    out = []
    for p in _prime_divisors(g.order):
        report = sylow(g, p)
        out.append(
            _result(
                g,
                "sylow-count",
                report.conjugate_count % p == 1,
                f"p={p}, count={report.conjugate_count}",
            )
        )
        if report.is_normal:
            try:
                comp = find_complement(g, report.subgroup)
            except ToolkitError as exc:
                comp = None
                detail = f"p={p}: {exc}"
            else:
                detail = f"p={p}"
            out.append(_result(g, "normal-sylow-splits", comp is not None, detail))
    return out


def _check_characteristic_subgroup(g, aut):
    """Odd-order groups have an invariant elementary abelian p-subgroup."""
    if g.order % 2 == 0 or g.order == 1:
        return [_result(g, "characteristic-elementary", True, "not applicable")]
    try:
        sub = characteristic_elementary_abelian(g, aut)
    except ToolkitError as exc:
        return [_result(g, "characteristic-elementary", False, str(exc))]
    ok = is_characteristic(g, sub, aut)
    if aut.elements is not None:
        mset = sub.member_set()
        ok = ok and all(
            phi[x] in mset for phi in aut.elements for x in sub.members
        )
    return [
        _result(
            g,
            "characteristic-elementary",
            ok,
            f"order {sub.order}",
        )
    ]
