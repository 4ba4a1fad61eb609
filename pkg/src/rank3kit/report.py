"""JSON reports for the rank-3 pipeline.

A report is the analyzer output plus a schema version, the tool version and
a SHA-256 digest of the input. Emission is deterministic (sorted keys, plain
JSON types) and parsing is strict: unknown or missing fields are errors.
Block lists are stored 1-indexed like every other external format.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from rank3kit import __version__
from rank3kit.analyzer import Rank3Report
from rank3kit.errors import Rank3Error

SCHEMA_VERSION = 1


class ReportFormatError(Rank3Error, ValueError):
    pass


def to_plain(x):
    """Recursively convert numpy scalars/arrays, tuples and sets to JSON types."""
    if isinstance(x, dict):
        return {str(k): to_plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(to_plain(v) for v in x)
    if isinstance(x, np.ndarray):
        return to_plain(x.tolist())
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


def digest_text(text) -> str:
    if isinstance(text, str):
        text = text.encode()
    return "sha256:" + hashlib.sha256(text).hexdigest()


_REPORT_FIELDS = tuple(f.name for f in fields(Rank3Report))


@dataclass
class JsonReport:
    schema_version: int
    tool_version: str
    input_digest: str
    report: dict = field(default_factory=dict)

    @classmethod
    def from_report(cls, rep: Rank3Report, input_digest: str):
        d = to_plain(asdict(rep))
        if d.get("blocks") is not None:
            d["blocks"] = [[x + 1 for x in b] for b in d["blocks"]]
        return cls(SCHEMA_VERSION, __version__, input_digest, d)

    def to_json(self) -> str:
        return json.dumps(to_plain(asdict(self)), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "JsonReport":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ReportFormatError(f"not JSON: {e}") from None
        if not isinstance(data, dict):
            raise ReportFormatError("top level must be an object")
        _exact_keys(data, {f.name for f in fields(cls)}, "report file")
        if data["schema_version"] != SCHEMA_VERSION:
            raise ReportFormatError(f"unsupported schema_version {data['schema_version']}")
        rep = data["report"]
        if not isinstance(rep, dict):
            raise ReportFormatError("'report' must be an object")
        _exact_keys(rep, set(_REPORT_FIELDS), "report")
        return cls(data["schema_version"], data["tool_version"], data["input_digest"], rep)

    def to_rank3_report(self) -> Rank3Report:
        d = dict(self.report)
        if d.get("blocks") is not None:
            d["blocks"] = [[x - 1 for x in b] for b in d["blocks"]]
        return Rank3Report(**d)


def _exact_keys(d, expected, where):
    unknown = sorted(set(d) - expected)
    missing = sorted(expected - set(d))
    if unknown:
        raise ReportFormatError(f"unknown fields in {where}: {', '.join(unknown)}")
    if missing:
        raise ReportFormatError(f"missing fields in {where}: {', '.join(missing)}")
