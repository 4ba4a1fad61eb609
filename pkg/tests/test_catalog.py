import json
from datetime import datetime, timezone

import pytest

from rank3kit.catalog import Catalog, CatalogEntry, CatalogError, builtin_entries, builtin_entry, verify_entry
from rank3kit.group import PermGroup


def test_builtin_entries_verify():
    names = [e.name for e in builtin_entries()]
    assert names == ["3.S6-deg18", "2.M12-deg24"]
    for e in builtin_entries():
        res = verify_entry(e)
        assert res.ok, res.mismatches
        assert e.status == "verified" and e.verified_at


def test_negative_control_lists_order_only():
    e = builtin_entry("2.M12-deg24")
    e.claims["order"] = 95040
    res = verify_entry(e)
    assert not res.ok and e.status == "mismatch"
    assert res.mismatches == [{"field": "order", "claimed": 95040, "computed": 190080}]


def test_several_mismatches_are_field_precise():
    e = CatalogEntry.from_group("D8", PermGroup.dihedral(4), {"order": 8, "rank": 2, "subdegrees": [1, 3]})
    res = verify_entry(e, now=datetime(2026, 1, 1, tzinfo=timezone.utc))
    assert [m["field"] for m in res.mismatches] == ["rank", "subdegrees"]
    assert e.verified_at == "2026-01-01T00:00:00+00:00"


def test_persistence_round_trip(tmp_path):
    path = tmp_path / "cat" / "catalog.json"
    cat = Catalog(path)
    cat.add(CatalogEntry.from_group("C5", PermGroup.cyclic(5), {"order": 5, "rank": 5}))
    again = Catalog(path)
    assert again.names() == ["C5"]
    assert again.entries["C5"].status == "verified"
    assert again.entries["C5"].group().order() == 5
    # only the final file is left behind
    assert [p.name for p in path.parent.iterdir()] == ["catalog.json"]
    assert again.verify("C5").ok


def test_bad_catalog_contents(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"entries": [{"name": "x", "degree": 2, "generators": ["(1,2)"],
                                             "claims": {"colour": "red"}}]}))
    with pytest.raises(CatalogError, match="unknown claim"):
        Catalog(path)
    path.write_text("{")
    with pytest.raises(CatalogError, match="not JSON"):
        Catalog(path)


def test_missing_entry(tmp_path):
    with pytest.raises(CatalogError):
        Catalog(tmp_path / "none.json").verify("nothing")
    with pytest.raises(CatalogError):
        builtin_entry("nothing")
