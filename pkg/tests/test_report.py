import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rank3kit.analyzer import analyze
from rank3kit.examples import build_sum_zero_example
from rank3kit.group import PermGroup
from rank3kit.report import SCHEMA_VERSION, JsonReport, ReportFormatError, digest_text, to_plain


@pytest.fixture(scope="module")
def sum_zero_report():
    return analyze(build_sum_zero_example())


def test_round_trip(sum_zero_report):
    jr = JsonReport.from_report(sum_zero_report, digest_text("x"))
    text = jr.to_json()
    back = JsonReport.from_json(text)
    assert back == jr
    assert back.to_json() == text
    rep = back.to_rank3_report()
    assert rep.blocks == sum_zero_report.blocks
    assert rep.affine_rank3_class == "C"


def test_blocks_are_one_indexed(sum_zero_report):
    jr = JsonReport.from_report(sum_zero_report, "d")
    assert min(min(b) for b in jr.report["blocks"]) == 1


def test_emission_is_deterministic():
    texts = {JsonReport.from_report(analyze(PermGroup.dihedral(4)), "d").to_json() for _ in range(2)}
    assert len(texts) == 1


def test_unknown_fields_rejected(sum_zero_report):
    doc = json.loads(JsonReport.from_report(sum_zero_report, "d").to_json())
    doc["extra"] = 1
    with pytest.raises(ReportFormatError, match="unknown fields"):
        JsonReport.from_json(json.dumps(doc))
    doc.pop("extra")
    doc["report"]["surprise"] = True
    with pytest.raises(ReportFormatError, match="unknown fields in report"):
        JsonReport.from_json(json.dumps(doc))


def test_missing_and_version(sum_zero_report):
    doc = json.loads(JsonReport.from_report(sum_zero_report, "d").to_json())
    del doc["report"]["rank"]
    with pytest.raises(ReportFormatError, match="missing"):
        JsonReport.from_json(json.dumps(doc))
    doc = json.loads(JsonReport.from_report(sum_zero_report, "d").to_json())
    doc["schema_version"] = SCHEMA_VERSION + 1
    with pytest.raises(ReportFormatError, match="schema_version"):
        JsonReport.from_json(json.dumps(doc))
    with pytest.raises(ReportFormatError):
        JsonReport.from_json("not json")


json_values = st.recursive(
    st.none() | st.booleans() | st.integers(-10**6, 10**6) | st.text(max_size=5),
    lambda kids: st.lists(kids, max_size=3) | st.dictionaries(st.text(max_size=3), kids, max_size=3),
    max_leaves=10)


@given(json_values)
def test_to_plain_is_json_stable(v):
    assert json.loads(json.dumps(to_plain(v))) == v


def test_to_plain_numpy():
    v = {"a": np.int64(3), "b": np.array([1, 2]), "c": (np.bool_(True),), "d": {2, 1}}
    assert to_plain(v) == {"a": 3, "b": [1, 2], "c": [True], "d": [1, 2]}


def test_digest():
    assert digest_text("abc") == digest_text(b"abc")
    assert digest_text("abc").startswith("sha256:")
