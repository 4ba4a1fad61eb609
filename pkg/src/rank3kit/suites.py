"""Verification suites: named collections of checks with machine-readable verdicts.

Each check yields a record ``{"suite", "check", "status", "detail", "seconds"}``
where status is one of pass / fail / skip / flag. A skip means a capacity
limit stopped the check; a flag records a known disagreement between a
claimed and a computed value that is reported rather than failed.
"""

from __future__ import annotations

import time
import traceback
from dataclasses import asdict, dataclass, field

from rank3kit.analyzer import analyze, pointwise_kernel_check, two_block_check
from rank3kit.catalog import builtin_entries, builtin_entry, verify_entry
from rank3kit.errors import CapacityError
from rank3kit.examples import (build_affine16, build_extraspecial_holomorph, build_sum_zero_example,
                               build_unitary_sylow)
from rank3kit.field import field_of_order
from rank3kit.linear import (DeltaDomain, FamilySpec, delta_action, family_grid, not_innately_condition,
                             rank3_family_predicate, scan_family, suborbit_checks)
from rank3kit.linear_checks import corpus_ambients, spot_check
from rank3kit.report import to_plain
from rank3kit.smallgroups import (SmallGroupTable, alternating4, automorphism_orbit_count, elementary_abelian,
                                  heisenberg, quaternion8)
from rank3kit.structure import class_closures, is_innately_transitive, is_semiprimitive

STATUSES = ("pass", "fail", "skip", "flag")


@dataclass
class CheckResult:
    suite: str
    check: str
    status: str
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0


class _Recorder:
    def __init__(self, suite):
        self.suite = suite
        self.results = []

    def run(self, name, fn):
        """fn returns (ok, detail) or (status, detail)."""
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
            status = ok if isinstance(ok, str) else ("pass" if ok else "fail")
        except CapacityError as e:
            status, detail = "skip", {"capacity": str(e)}
        except Exception as e:  # reported, never swallowed silently
            status, detail = "fail", {"error": f"{type(e).__name__}: {e}",
                                      "traceback": traceback.format_exc(limit=3)}
        self.results.append(CheckResult(self.suite, name, status, to_plain(detail),
                                        round(time.perf_counter() - t0, 3)))


# corpus of rank-3 imprimitive groups


def rank3_corpus():
    """(name, builder) pairs for the imprimitive rank-3 groups used by the invariant checks."""
    def fam(label):
        spec = FamilySpec.parse(label)
        return lambda: delta_action(spec)

    def cat(name):
        return lambda: builtin_entry(name).group()

    return [
        ("affine16-G1", lambda: build_affine16("G1")),
        ("affine16-G2", lambda: build_affine16("G2")),
        ("sum-zero(2,2,3)", build_sum_zero_example),
        ("holomorph-3^(1+2)", lambda: build_extraspecial_holomorph(3).group),
        ("d=3,q=4,r=3,gens=delta,phi", fam("d=3,q=4,r=3,gens=delta,phi")),
        ("d=3,q=4,r=3,gens=phi", fam("d=3,q=4,r=3,gens=phi")),
        ("d=2,q=7,r=2,gens=delta", fam("d=2,q=7,r=2,gens=delta")),
        ("d=2,q=5,r=2,gens=delta", fam("d=2,q=5,r=2,gens=delta")),
        ("3.S6-deg18", cat("3.S6-deg18")),
        ("2.M12-deg24", cat("2.M12-deg24")),
    ]


# suites


def suite_examples(rec: _Recorder):
    def affine16():
        out = {}
        ok = True
        expect = {"G1": ([1, 7, 8], False), "G2": ([1, 1, 14], True)}
        for which, (subs, semi) in expect.items():
            G = build_affine16(which)
            rep = analyze(G)
            out[which] = {"rank": rep.rank, "subdegrees": sorted(rep.subdegrees),
                          "semiprimitive": rep.flags["semiprimitive"], "class": rep.affine_rank3_class}
            ok &= rep.rank == 3 and sorted(rep.subdegrees) == subs and rep.flags["semiprimitive"] == semi
        return ok, out

    def unitary():
        m = build_unitary_sylow(3)
        Z = m.table.center()
        detail = {"degree": m.group.degree, "order": m.group.order(), "N_special": m.table.is_special(),
                  "center_order": len(Z), "semiprimitive": is_semiprimitive(m.group),
                  "torus_orbit_sizes": sorted(len(o) for o in m.torus_orbits),
                  "subdegrees": sorted(m.group.subdegrees()),
                  "claimed_rank": m.claimed_rank, "computed_rank": m.rank}
        built = (m.group.degree == 27 and m.group.order() == 216 and detail["N_special"]
                 and len(Z) == 3)
        if not built:
            return False, detail
        if m.discrepancy:
            detail["message"] = f"claimed rank {m.claimed_rank}; computed rank {m.rank}; DISCREPANCY"
            return "flag", detail
        return True, detail

    def hol():
        h = build_extraspecial_holomorph(3, 1)
        rep = analyze(h.group)
        detail = {"degree": rep.degree, "order": rep.order, "rank": rep.rank,
                  "subdegrees": sorted(rep.subdegrees), "semiprimitive": rep.flags["semiprimitive"],
                  "class": rep.affine_rank3_class, "N_tag": rep.evidence.get("B_regular_normal_tag"),
                  "aut_order": h.aut_order}
        ok = (rep.degree == 27 and rep.rank == 3 and detail["subdegrees"] == [1, 2, 24]
              and rep.affine_rank3_class == "B" and detail["N_tag"] == "special-p-expp")
        return ok, detail

    def hol_semiprimitive():
        G = build_extraspecial_holomorph(3, 1).group
        return is_semiprimitive(G), {"semiprimitive": is_semiprimitive(G)}

    def sum_zero():
        G = build_sum_zero_example()
        rep = analyze(G)
        kc = pointwise_kernel_check(G)
        detail = {"rank": rep.rank, "subdegrees": sorted(rep.subdegrees),
                  "KB_transitive_on_other": kc["KB_transitive_on_other"], "class": rep.affine_rank3_class}
        return rep.rank == 3 and kc["KB_transitive_on_other"] and rep.affine_rank3_class == "C", detail

    rec.run("affine16 pair", affine16)
    rec.run("unitary sylow q=3", unitary)
    rec.run("extraspecial holomorph p=3", hol)
    rec.run("extraspecial holomorph p=3 semiprimitive", hol_semiprimitive)
    rec.run("sum-zero (2,2,3)", sum_zero)


def suite_family_scan(rec: _Recorder, dvals=(2, 3), qvals=(3, 4, 5, 7, 8, 9)):
    for d, q, r in family_grid(dvals, qvals):
        def cell(d=d, q=q, r=r):
            rows = scan_family(d, q, r)
            bad = [asdict(x) for x in rows if x.agree is False]
            order_bad = [x.spec for x in rows if x.order != x.predicted_order]
            in_scope = sum(x.agree is not None for x in rows)
            return not bad and not order_bad, {"rows": len(rows), "in_scope": in_scope,
                                               "disagreements": bad, "order_mismatch": order_bad}
        rec.run(f"predicate d={d},q={q},r={r}", cell)
    for d in dvals:
        for q in qvals:
            def vec(d=d, q=q):
                checks = suborbit_checks(d, q)
                return all(c.ok for c in checks), {"checked": [c.label for c in checks],
                                                   "failed": [asdict(c) for c in checks if not c.ok]}
            rec.run(f"suborbits on vectors d={d},q={q}", vec)
    for d, q, r in family_grid(dvals, qvals):
        def delta(d=d, q=q, r=r):
            checks = suborbit_checks(d, q, r)
            return all(c.ok for c in checks), {"checked": [c.label for c in checks],
                                               "failed": [asdict(c) for c in checks if not c.ok]}
        rec.run(f"suborbits on Delta d={d},q={q},r={r}", delta)
    rec.run("d=3,q=4,r=3 semilinear and linear", check_343)


def check_343():
    """Semilinear selector is rank 3 on 63 points, linear selector rank 4."""
    F = field_of_order(4)
    dom = DeltaDomain(F, 3, 3)
    gam = FamilySpec.named(3, 4, 3, "GammaL")
    gl = FamilySpec.named(3, 4, 3, "GL")
    G = delta_action(gam, dom)
    H = delta_action(gl, dom)
    pred = rank3_family_predicate(gam)
    detail = {"degree": G.degree, "rank": G.rank(), "subdegrees": sorted(G.subdegrees()),
              "semiprimitive": is_semiprimitive(G), "innately_transitive": is_innately_transitive(G),
              "arithmetic_not_innately": not_innately_condition(3, 4, 3),
              "predicate_rank3": pred.rank3, "predicate_not_innately": pred.semiprimitive_not_innately,
              "GL_rank": H.rank()}
    ok = (G.degree == 63 and detail["rank"] == 3 and detail["subdegrees"] == [1, 2, 60]
          and detail["semiprimitive"] and not detail["innately_transitive"]
          and detail["arithmetic_not_innately"] and pred.rank3 and pred.semiprimitive_not_innately
          and detail["GL_rank"] == 4)
    return ok, detail


def block_invariants(G):
    rep = analyze(G)
    K = rep._ctx.K
    two = two_block_check(G)
    closures = []
    for _, N in class_closures(G):
        closures.append("transitive" if N.is_transitive() else
                        ("in K" if N.is_subgroup_of(K) else "neither"))
    two_trans = bool(rep.block_group_2transitive and rep.induced_on_block_2transitive)
    detail = {"block_systems": rep.block_system_count, "both_2transitive": two_trans,
              "two_block": two, "kernel_times_top": rep.kernel_order * rep.block_group_order,
              "order": rep.order, "closures": sorted(set(closures))}
    ok = (rep.rank == 3 and rep.block_system_count == 1 and two_trans and two["ok"]
          and detail["kernel_times_top"] == rep.order and "neither" not in closures)
    return ok, detail


def suite_block_invariants(rec: _Recorder):
    for name, build in rank3_corpus():
        rec.run(name, lambda build=build: block_invariants(build()))


AUT_TABLE = (
    # name, builder, expected orbit count, expected shape tag
    ("Z_2^3", lambda: elementary_abelian(2, 3), 2, "elementary-abelian"),
    ("Z_9", lambda: SmallGroupTable.cyclic(9), 3, "homocyclic-p2"),
    ("Q_8", quaternion8, 3, "special-2-exp4"),
    ("A_4", alternating4, 3, "frobenius-pq"),
    ("3^(1+2) exponent 3", lambda: heisenberg(3, 1), 3, "special-p-expp"),
    ("Z_8", lambda: SmallGroupTable.cyclic(8), 4, "none-of-listed"),
)


def suite_aut_orbit_table(rec: _Recorder):
    for name, build, count, tag in AUT_TABLE:
        def one(build=build, count=count, tag=tag):
            res = automorphism_orbit_count(build())
            return res.orbit_count == count and res.tag == tag, asdict(res)
        rec.run(name, one)


def suite_catalog(rec: _Recorder):
    for e in builtin_entries():
        def one(e=e):
            v = verify_entry(e)
            return v.ok, {"computed": v.computed, "mismatches": v.mismatches}
        rec.run(f"verify {e.name}", one)

    def negative():
        e = builtin_entry("2.M12-deg24")
        e.claims["order"] = 95040
        v = verify_entry(e)
        return [m["field"] for m in v.mismatches] == ["order"], {"mismatches": v.mismatches}
    rec.run("negative control 2.M12 order 95040", negative)


def suite_linear_spot_checks(rec: _Recorder):
    for amb in corpus_ambients():
        def one(amb=amb):
            res = spot_check(amb)
            expect_holders = [168] if amb.label == "GL_3(2)" else []
            return res.ok and res.prime_power_index == expect_holders, asdict(res)
        rec.run(amb.label, one)


SUITES = {
    "examples": suite_examples,
    "family-scan": suite_family_scan,
    "block-invariants": suite_block_invariants,
    "aut-orbit-table": suite_aut_orbit_table,
    "catalog": suite_catalog,
    "linear-spot-checks": suite_linear_spot_checks,
}


def verify_suites(selector=None) -> list[CheckResult]:
    """Run the named suites (all when selector is None), results in run order."""
    names = list(SUITES) if selector in (None, "all") else [s.strip() for s in selector.split(",")]
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    out = []
    for s in names:
        rec = _Recorder(s)
        SUITES[s](rec)
        out.extend(rec.results)
    return out


def exit_status(results) -> int:
    statuses = {r.status for r in results}
    if "fail" in statuses:
        return 1
    if "skip" in statuses:
        return 2
    return 0
