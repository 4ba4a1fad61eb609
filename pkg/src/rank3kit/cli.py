"""Command-line interface.

Exit statuses: 0 success, 1 a check failed or a claim did not verify,
2 a capacity limit was hit, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from rank3kit import __version__
from rank3kit.analyzer import Rank3Report, analyze
from rank3kit.catalog import CLAIM_KEYS, Catalog, CatalogEntry, CatalogError, builtin_entries
from rank3kit.errors import CapacityError, GroupFileError, HypothesisError
from rank3kit.examples import (build_affine16, build_extraspecial_holomorph, build_sum_zero_example,
                               build_unitary_sylow)
from rank3kit.groupfile import format_group_file, load_group_file
from rank3kit.linear import FamilySpec, delta_action, family_grid, rank3_family_predicate, scan_family
from rank3kit.numtheory import as_prime_power
from rank3kit.report import JsonReport, digest_text, to_plain
from rank3kit.smallgroups import automorphism_orbit_count, parse_table_text

EX_OK, EX_FAIL, EX_CAPACITY, EX_USAGE = 0, 1, 2, 64
DEFAULT_CATALOG = Path.home() / ".rank3kit" / "catalog.json"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def _say(args, *lines):
    if not args.quiet:
        for ln in lines:
            print(ln)


def format_report(rep: Rank3Report) -> list[str]:
    lines = [
        f"group        {rep.name or '-'}",
        f"degree       {rep.degree}",
        f"order        {rep.order}",
        f"rank         {rep.rank}",
        f"subdegrees   {sorted(rep.subdegrees)}",
        "flags        " + ", ".join(f"{k}={v}" for k, v in sorted(rep.flags.items())),
    ]
    if rep.block_size is not None:
        lines += [
            f"blocks       {rep.block_count} blocks of size {rep.block_size} "
            f"({rep.block_system_count} nontrivial system(s))",
            f"kernel K     order {rep.kernel_order}; regular on a block: {rep.K_on_B_regular}; "
            f"K_(B) order {rep.K_pointwise_B_order}, transitive on another block: "
            f"{rep.K_pointwise_B_transitive_on_other}",
            f"on blocks    order {rep.block_group_order}, {rep.block_group_type}, "
            f"2-transitive: {rep.block_group_2transitive}",
            f"on a block   order {rep.induced_on_block_order}, {rep.induced_on_block_type}, "
            f"2-transitive: {rep.induced_on_block_2transitive}",
        ]
        if rep.L_order is not None:
            lines.append(f"O_p(K)       p={rep.prime}, order {rep.L_order}, "
                         f"self-centralizing: {rep.centralizer_equals_L}")
    lines.append(f"class        {rep.affine_rank3_class}")
    for ln in rep.notes:
        lines.append(f"note         {ln}")
    return lines


def _write_json(rep, digest, out):
    text = JsonReport.from_report(rep, digest).to_json()
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _group_digest(g):
    return digest_text(format_group_file(g))


# subcommands


def cmd_analyze(args):
    path = Path(args.file)
    g = load_group_file(path)
    rep = analyze(g, cap=args.cap_order)
    _say(args, *format_report(rep))
    if args.json:
        _write_json(rep, digest_text(path.read_bytes()), args.json)
    return EX_OK


def cmd_family(args):
    spec = FamilySpec.parse(args.family)
    G = delta_action(spec)
    G.name = spec.label()
    rep = analyze(G, cap=args.cap_order)
    pred = rank3_family_predicate(spec, G)
    _say(args, *format_report(rep))
    _say(args, f"predicted order {spec.predicted_order()}; computed order {rep.order}")
    if pred.rank3 is None:
        verdict = "OUTSIDE SCOPE"
    else:
        verdict = "CONSISTENT" if pred.rank3 == (rep.rank == 3) else "INCONSISTENT"
    _say(args, f"predicate rank3={pred.rank3} (scope: {pred.scope}); "
               f"semiprimitive and not innately transitive={pred.semiprimitive_not_innately}",
         f"computed rank {rep.rank}; verdict {verdict}")
    if args.json:
        _write_json(rep, _group_digest(G), args.json)
    ok = verdict != "INCONSISTENT" and rep.order == spec.predicted_order()
    return EX_OK if ok else EX_FAIL


def cmd_scan(args):
    qvals = [q for q in range(3, args.qmax + 1) if as_prime_power(q)]
    dvals = list(range(2, args.dmax + 1))
    bad = 0
    in_scope = 0
    total = 0
    for d, q, r in family_grid(dvals, qvals):
        for row in scan_family(d, q, r):
            total += 1
            in_scope += row.agree is not None
            bad += row.agree is False
            mark = {True: "ok", False: "DISAGREE", None: "outside"}[row.agree]
            _say(args, f"{row.spec:<40} n={row.degree:<5} |G|={row.order:<9} rank={row.rank} "
                       f"predicate={row.predicate} {mark}")
    _say(args, f"{total} groups, {in_scope} in scope, {bad} disagreement(s)")
    return EX_OK if bad == 0 else EX_FAIL


def cmd_example(args):
    name = args.name
    if name == "unitary-sylow":
        m = build_unitary_sylow(args.q)
        G = m.group
        rep = analyze(G, cap=args.cap_order)
        _say(args, *format_report(rep))
        _say(args, f"N special: {m.table.is_special()}; |Z(N)| = {len(m.table.center())}; "
                   f"torus orbit sizes {sorted(len(o) for o in m.torus_orbits)}")
        line = f"claimed rank {m.claimed_rank}; computed rank {m.rank}"
        if m.discrepancy:
            line += "; DISCREPANCY"
        _say(args, line)
    else:
        if name == "affine16":
            G = build_affine16(args.which)
        elif name == "holomorph":
            G = build_extraspecial_holomorph(args.p, args.m).group
        else:
            G = build_sum_zero_example()
        rep = analyze(G, cap=args.cap_order)
        _say(args, *format_report(rep))
    if args.json:
        _write_json(rep, _group_digest(G), args.json)
    return EX_OK


def _parse_claim(text):
    key, sep, val = text.partition("=")
    if not sep or key not in CLAIM_KEYS:
        raise CatalogError(f"bad claim {text!r}; use key=value with key in {', '.join(CLAIM_KEYS)}")
    try:
        return key, json.loads(val)
    except json.JSONDecodeError:
        return key, val


def cmd_catalog(args):
    cat = Catalog(args.catalog)
    if args.action == "list":
        for name in cat.names():
            e = cat.entries[name]
            _say(args, f"{name:<20} degree {e.degree:<4} {e.status:<10} {e.verified_at or '-'}")
        return EX_OK
    if args.action == "add":
        if args.builtin:
            entries = builtin_entries()
        else:
            if not args.name or not args.file:
                raise CatalogError("catalog add needs NAME and FILE (or --builtin)")
            g = load_group_file(args.file, name=args.name)
            claims = dict(_parse_claim(c) for c in args.claim)
            entries = [CatalogEntry.from_group(args.name, g, claims, args.provenance or f"file {args.file}")]
        status = EX_OK
        for e in entries:
            res = cat.add(e, cap=args.cap_order)
            status = max(status, _print_verification(args, res))
        return status
    if not args.name:
        raise CatalogError("catalog verify needs NAME")
    return _print_verification(args, cat.verify(args.name, cap=args.cap_order))


def _print_verification(args, res):
    if res.ok:
        _say(args, f"{res.name}: verified")
        return EX_OK
    _say(args, f"{res.name}: MISMATCH")
    for m in res.mismatches:
        _say(args, f"  {m['field']}: claimed {m['claimed']}, computed {m['computed']}")
    return EX_FAIL


def cmd_verify(args):
    from rank3kit.suites import exit_status, verify_suites

    results = verify_suites(args.suite)
    for r in results:
        line = f"{r.status.upper():<5} {r.suite} :: {r.check} ({r.seconds:.2f}s)"
        if r.status == "flag" and "message" in r.detail:
            line += f" -- {r.detail['message']}"
        if r.status in ("fail", "skip"):
            line += f" -- {json.dumps(r.detail, sort_keys=True)[:400]}"
        _say(args, line)
    counts = {s: sum(r.status == s for r in results) for s in ("pass", "fail", "skip", "flag")}
    _say(args, " ".join(f"{k}={v}" for k, v in counts.items()))
    if args.json:
        doc = {"tool_version": __version__, "results": [to_plain(vars(r)) for r in results]}
        Path(args.json).write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return exit_status(results)


def cmd_autorbits(args):
    t = parse_table_text(Path(args.tablefile).read_text())
    res = automorphism_orbit_count(t)
    _say(args, f"order {t.order}", f"|Aut| {res.aut_order}", f"orbits {res.orbit_count}",
         f"orbit sizes {res.orbit_sizes}", f"shape {res.tag}")
    return EX_OK


def build_parser():
    p = _Parser(prog="rank3kit", description="Rank 3 permutation group toolkit.")
    p.add_argument("--version", action="version", version=f"rank3kit {__version__}")
    p.add_argument("--cap-order", type=int, default=None,
                   help="cap on group order for element enumeration")
    p.add_argument("--seed", type=int, default=None,
                   help="scheduling seed; results never depend on it")
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--catalog", default=str(DEFAULT_CATALOG), help="catalog JSON file")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="analyze a group file")
    a.add_argument("file")
    a.add_argument("--json", metavar="OUT", help="write the JSON report ('-' for stdout)")
    a.set_defaults(func=cmd_analyze)

    f = sub.add_parser("family", help="build and analyze one linear-family group")
    f.add_argument("--family", required=True, metavar="d=..,q=..,r=..,gens=..")
    f.add_argument("--json", metavar="OUT")
    f.set_defaults(func=cmd_family)

    s = sub.add_parser("scan", help="compare the rank 3 predicate with computed ranks")
    s.add_argument("--dmax", type=int, default=3)
    s.add_argument("--qmax", type=int, default=9)
    s.set_defaults(func=cmd_scan)

    e = sub.add_parser("example", help="build and analyze an explicit example group")
    e.add_argument("name", choices=["affine16", "unitary-sylow", "holomorph", "sum-zero"])
    e.add_argument("--which", choices=["G1", "G2"], default="G2", help="affine16 variant")
    e.add_argument("--q", type=int, default=3, help="unitary-sylow field parameter")
    e.add_argument("--p", type=int, default=3, help="holomorph prime")
    e.add_argument("--m", type=int, default=1, help="holomorph: N = p^(1+2m)")
    e.add_argument("--json", metavar="OUT")
    e.set_defaults(func=cmd_example)

    c = sub.add_parser("catalog", help="maintain the verified catalog")
    c.add_argument("action", choices=["add", "list", "verify"])
    c.add_argument("name", nargs="?")
    c.add_argument("file", nargs="?")
    c.add_argument("--claim", action="append", default=[], metavar="KEY=VALUE")
    c.add_argument("--provenance")
    c.add_argument("--builtin", action="store_true", help="add the vendored 3.S6 and 2.M12 entries")
    c.set_defaults(func=cmd_catalog)

    v = sub.add_parser("verify-paper", help="run the verification suites")
    v.add_argument("--suite", default=None, help="comma-separated suite names (default: all)")
    v.add_argument("--json", metavar="OUT")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("autorbits", help="automorphism orbits of a group given by its table")
    t.add_argument("tablefile")
    t.set_defaults(func=cmd_autorbits)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as e:
        print(f"rank3kit: {e}", file=sys.stderr)
        return EX_CAPACITY
    except (GroupFileError, CatalogError, HypothesisError, ValueError, OSError) as e:
        print(f"rank3kit: {e}", file=sys.stderr)
        return EX_FAIL


if __name__ == "__main__":
    sys.exit(main())
