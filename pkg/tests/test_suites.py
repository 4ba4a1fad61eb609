from rank3kit.suites import SUITES, CheckResult, exit_status, verify_suites

import pytest


def test_exit_status_precedence():
    r = lambda s: CheckResult("x", "y", s)
    assert exit_status([r("pass"), r("flag")]) == 0
    assert exit_status([r("pass"), r("skip")]) == 2
    assert exit_status([r("skip"), r("fail")]) == 1


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify_suites("nope")


def test_aut_table_suite():
    res = verify_suites("aut-orbit-table")
    assert len(res) == 6 and all(r.status == "pass" for r in res)


def test_catalog_suite():
    res = verify_suites("catalog")
    assert [r.status for r in res] == ["pass", "pass", "pass"]


def test_examples_suite_statuses():
    res = {r.check: r for r in verify_suites("examples")}
    assert res["affine16 pair"].status == "pass"
    assert res["unitary sylow q=3"].status == "flag"
    assert "DISCREPANCY" in res["unitary sylow q=3"].detail["message"]
    assert res["sum-zero (2,2,3)"].status == "pass"
    assert res["extraspecial holomorph p=3"].status == "pass"
    # Hol(3^(1+2)) has an intransitive, non-semiregular normal subgroup
    assert res["extraspecial holomorph p=3 semiprimitive"].status == "fail"


def test_suite_names():
    assert set(SUITES) == {"examples", "family-scan", "block-invariants", "aut-orbit-table", "catalog",
                           "linear-spot-checks"}
