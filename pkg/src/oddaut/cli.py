"""Command-line surface: analyze, aut, scan, verify-paper, extend, make."""

from __future__ import annotations

import json
import os
import sys
import time
from pathlib import Path

import click

from . import __version__
from .abelian import abelian_invariants
from .autengine import automorphism_group, is_ni
from .catalog import build_group, odd_catalog, teaching_catalog
from .config import DEFAULT_SEARCH_BUDGET
from .enumeration import (
    candidate_aut_orders,
    candidate_quotient_orders,
    load_reference_aut_orders,
    load_reference_quotient_orders,
    load_reference_table,
    normal_sylow_table,
)
from .errors import (
    BudgetExceeded,
    RuleSetIncomplete,
    SearchBudgetExceeded,
    ToolkitError,
)
from .groupfile import (
    ScanRecord,
    content_digest,
    parse_group_file,
    scan_header,
    write_group_file,
    write_group_text,
)
from .groups import generated_subgroup
from .involution import (
    build_involution_abelian,
    build_involution_class2,
    extend_automorphism,
    extension_problem,
)
from .structure import center, central_quotient_profile, derived_subgroup, sylow
from .suites import run_property_suites

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3
EXIT_GOLDEN = 4


def _fail(exc):
    click.echo(f"error: {exc}", err=True)
    if isinstance(exc, (BudgetExceeded, SearchBudgetExceeded)):
        sys.exit(EXIT_BUDGET)
    if isinstance(exc, RuleSetIncomplete):
        sys.exit(EXIT_GOLDEN)
    sys.exit(EXIT_VALIDATION)


@click.group()
@click.version_option(version=__version__)
def main():
    """Finite-group toolkit on dense multiplication tables."""


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def analyze(path):
    """Invariant report: order, center, derived subgroup, Sylow data."""
    try:
        g = parse_group_file(path)
        z = center(g)
        d = derived_subgroup(g)
        profile = central_quotient_profile(g)
        click.echo(f"name: {g.name}")
        click.echo(f"order: {g.order}")
        click.echo(f"abelian: {g.is_abelian()}")
        click.echo(f"exponent: {g.exponent()}")
        click.echo(f"center-order: {z.order}")
        click.echo(f"derived-order: {d.order}")
        click.echo(f"central-quotient-order: {profile.quotient_order}")
        click.echo(f"central-quotient-abelian-p-group: "
                   f"{profile.is_p_group and profile.abelian}")
        if profile.invariant_factors is not None:
            click.echo(
                "central-quotient-invariants: "
                + ",".join(str(x) for x in profile.invariant_factors)
            )
            click.echo(f"rank-condition: {profile.rank_condition_holds}")
        if g.is_abelian():
            inv = abelian_invariants(g)
            click.echo(
                "invariant-factors: " + ",".join(str(x) for x in inv.factors)
            )
        primes = []
        n = g.order
        dd = 2
        while dd * dd <= n:
            if n % dd == 0:
                primes.append(dd)
                while n % dd == 0:
                    n //= dd
            dd += 1
        if n > 1:
            primes.append(n)
        for p in primes:
            rep = sylow(g, p)
            click.echo(
                f"sylow-{p}: order={rep.subgroup.order} "
                f"conjugates={rep.conjugate_count} normal={rep.is_normal}"
            )
    except ToolkitError as exc:
        _fail(exc)


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--budget", type=int, default=DEFAULT_SEARCH_BUDGET, show_default=True)
@click.option("--cap", type=int, default=None, help="group-order cap override")
def aut(path, budget, cap):
    """Automorphism group order, parity, and no-inversion flags."""
    try:
        g = parse_group_file(path)
        a = automorphism_group(g, budget=budget, order_cap=cap)
        report = is_ni(g, a)
        click.echo(f"name: {g.name}")
        click.echo(f"order: {g.order}")
        click.echo(f"aut-order: {a.order}")
        click.echo(f"aut-parity: {a.parity()}")
        click.echo(f"aut-order-odd: {report.aut_order_odd}")
        click.echo(f"no-inversion: {report.no_inversion}")
        if report.trivial:
            click.echo("note: trivial group, excluded from the minimal-order question")
        stats = a.search_stats
        click.echo(
            f"search-stats: nodes={stats.nodes_visited} "
            f"pruned-order={stats.pruned_by_order} "
            f"pruned-class={stats.pruned_by_class} "
            f"wall={stats.wall_time:.3f}s"
        )
    except ToolkitError as exc:
        _fail(exc)


def _scan_one(name, construction, text, budget):
    from .groupfile import parse_group_text

    start = time.perf_counter()
    g = parse_group_text(text)
    z = center(g)
    d = derived_subgroup(g)
    a = automorphism_group(g, budget=budget)
    report = is_ni(g, a)
    if report.trivial:
        status = "trivial"
    elif report.aut_order_odd and report.no_inversion:
        status = "ni"
    else:
        status = "not-ni"
    wall_ms = int((time.perf_counter() - start) * 1000)
    return ScanRecord(
        name=name,
        order=g.order,
        z_order=z.order,
        derived_order=d.order,
        aut_order=a.order,
        aut_parity=a.parity(),
        ni_status=status,
        construction=construction,
        wall_time_ms=wall_ms,
    )


@main.command()
@click.argument("directory", type=click.Path(exists=True, file_okay=False),
                required=False)
@click.option("--builtin", is_flag=True, help="scan the built-in odd catalog")
@click.option("--max-order", type=int, default=243, show_default=True,
              help="order bound for the built-in catalog")
@click.option("--odd-only", is_flag=True, help="skip groups of even order")
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--budget", type=int, default=DEFAULT_SEARCH_BUDGET, show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
@click.option("--cache", "cache_path", type=click.Path(dir_okay=False), default=None,
              help="cache file (default: <out>.cache.json)")
def scan(directory, builtin, max_order, odd_only, jobs, budget, out_path, cache_path):
    """Scan record per group: orders, automorphism parity, inversion status.

    Re-running with unchanged inputs replays cached records byte for byte.
    The built-in catalog is generated from constructors (abelian shapes by
    partition, extraspecial p^3, small classified semidirect actions); it
    is not a census of all groups of each order.
    """
    inputs = []
    try:
        if directory:
            for p in sorted(Path(directory).glob("*.cay")):
                inputs.append((p.stem, str(p), p.read_text(encoding="utf-8")))
        if builtin:
            for entry in odd_catalog(max_order):
                g = entry.build()
                inputs.append((entry.name, entry.spec, write_group_text(g)))
        if not inputs:
            raise click.UsageError("nothing to scan: give DIRECTORY or --builtin")
        cache_file = Path(cache_path) if cache_path else Path(str(out_path) + ".cache.json")
        cache = {}
        if cache_file.exists():
            cache = json.loads(cache_file.read_text(encoding="utf-8"))
        records = []
        todo = []
        for name, construction, text in sorted(inputs):
            g_order = None
            if odd_only:
                for line in text.splitlines():
                    if line.startswith("order "):
                        g_order = int(line.split()[1])
                        break
                if g_order is not None and g_order % 2 == 0:
                    continue
            digest = content_digest(text, budget)
            if digest in cache:
                records.append((name, ScanRecord.from_line(cache[digest])))
            else:
                todo.append((name, construction, text, digest))
        if jobs > 1 and len(todo) > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=jobs) as pool:
                futures = [
                    (name, digest, pool.submit(_scan_one, name, cons, text, budget))
                    for name, cons, text, digest in todo
                ]
                for name, digest, fut in futures:
                    rec = fut.result()
                    cache[digest] = rec.to_line()
                    records.append((name, rec))
        else:
            for name, cons, text, digest in todo:
                rec = _scan_one(name, cons, text, budget)
                cache[digest] = rec.to_line()
                records.append((name, rec))
        records.sort(key=lambda nr: (nr[1].order, nr[0]))
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(scan_header() + "\n")
            for _, rec in records:
                fh.write(rec.to_line() + "\n")
        cache_file.write_text(
            json.dumps(cache, indent=0, sort_keys=True), encoding="utf-8"
        )
        click.echo(f"wrote {len(records)} records to {out_path}")
    except ToolkitError as exc:
        _fail(exc)


@main.command("verify-paper")
@click.option("--lists", "what", flag_value="lists")
@click.option("--table", "what", flag_value="table")
@click.option("--lemmas", "what", flag_value="lemmas")
def verify_paper(what):
    """Diff the derived enumerations against the stored reference data.

    With no flag, runs the list and table checks plus the lemma property
    suites; exits 4 on any mismatch.
    """
    failed = False
    try:
        if what in (None, "lists", "table"):
            auts = candidate_aut_orders()
            ref_a = load_reference_aut_orders()
            click.echo(f"aut-order candidates: {len(auts)}/{len(ref_a)} match")
            if what in (None, "lists"):
                quots = candidate_quotient_orders(auts)
                ref_q = load_reference_quotient_orders()
                click.echo(
                    f"central-quotient candidates: {len(quots)}/{len(ref_q)} match"
                )
            if what in (None, "table"):
                quots = candidate_quotient_orders(auts)
                rows, omitted = normal_sylow_table(quots)
                ref_rows = load_reference_table()
                click.echo(f"normal-sylow table: {len(rows)}/{len(ref_rows)} rows match")
                click.echo(
                    "omitted orders: " + " ".join(str(x) for x in omitted)
                )
        if what in (None, "lemmas"):
            groups = [e.build() for e in teaching_catalog()]
            report = run_property_suites(groups)
            for check, (ok, total) in sorted(report.summary().items()):
                click.echo(f"lemma suite {check}: {ok}/{total}")
            if not report.passed:
                failed = True
                for r in report.failures():
                    click.echo(f"FAIL {r.group_name} {r.check}: {r.detail}")
    except RuleSetIncomplete as exc:
        click.echo(f"mismatch: {exc}", err=True)
        sys.exit(EXIT_GOLDEN)
    except ToolkitError as exc:
        _fail(exc)
    if failed:
        sys.exit(EXIT_GOLDEN)


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--normal", "normal_gens", required=True,
              help="comma-separated generator indices of the normal part")
@click.option("--complement", "complement_gens", required=True,
              help="comma-separated generator indices of the complement")
@click.option("--mode", type=click.Choice(["class2", "abelian", "commuting"]),
              default="class2", show_default=True)
@click.option("--phi", "phi_spec", default=None,
              help="comma-separated image list for commuting mode "
                   "(one entry per group element, identity outside A)")
def extend(path, normal_gens, complement_gens, mode, phi_spec):
    """Extend an automorphism of a normal subgroup to the whole group."""
    try:
        g = parse_group_file(path)
        a_sub = generated_subgroup(g, [int(x) for x in normal_gens.split(",")])
        b_sub = generated_subgroup(g, [int(x) for x in complement_gens.split(",")])
        if mode == "class2":
            problem = extension_problem(g, a_sub, b_sub)
            cert = build_involution_class2(problem)
            click.echo("certificate: order-2 automorphism found")
            click.echo(f"blocks: {len(cert.normalized_blocks)} non-trivial, "
                       f"{len(cert.trivial_reps)} trivial")
            zeta = {f"{k[0]},{k[1]}": v for k, v in sorted(cert.zeta.items())}
            click.echo(f"zeta: {json.dumps(zeta, sort_keys=True)}")
            click.echo("images: " + " ".join(str(x) for x in
                                             cert.automorphism.images))
        elif mode == "abelian":
            out = build_involution_abelian(g, a_sub, b_sub)
            click.echo("order-2 automorphism found")
            click.echo("images: " + " ".join(str(x) for x in out.images))
        else:
            if phi_spec is None:
                raise click.UsageError("--phi is required in commuting mode")
            imgs = [int(x) for x in phi_spec.split(",")]
            phi = {a: imgs[a] for a in a_sub.members}
            out = extend_automorphism(g, a_sub, b_sub, phi)
            click.echo(f"extension found, order {out.map_order()}")
            click.echo("images: " + " ".join(str(x) for x in out.images))
    except ToolkitError as exc:
        _fail(exc)


@main.command()
@click.argument("spec")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
@click.option("--name", default=None, help="override the group name")
@click.option("--cap", type=int, default=None, help="group-order cap override")
def make(spec, out_path, name, cap):
    """Construct a group from a spec string and write it to a file.

    Specs: cyclic:n | abelian:d1,d2,... | extraspecial:p:{p,p2} |
    dp:(A)x(B) | sdp:(A)x(B):matrix=p,n,entries (row-major, entries taken
    mod the invariant factor of the row's basis generator).
    """
    try:
        g = build_group(spec, cap=cap)
        if name:
            g.name = name
        write_group_file(g, out_path)
        click.echo(f"wrote {g.name} (order {g.order}) to {out_path}")
    except ToolkitError as exc:
        _fail(exc)


if __name__ == "__main__":
    main()
