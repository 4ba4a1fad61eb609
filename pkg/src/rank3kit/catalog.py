"""A small persistent catalog of permutation groups with claimed properties.

Every claim is recomputed on verification; an entry counts as verified only
when all of them match. The catalog is one JSON document, rewritten through
a temporary file and ``os.replace`` so readers never see a partial file.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path

from rank3kit.analyzer import analyze
from rank3kit.errors import Rank3Error
from rank3kit.group import PermGroup
from rank3kit.groupfile import format_group_file, parse_group_file
from rank3kit.report import to_plain

CLAIM_KEYS = (
    "order", "rank", "subdegrees", "block_size", "block_count",
    "semiprimitive", "quasiprimitive", "innately_transitive", "primitive", "class",
)
STATUSES = ("unverified", "verified", "mismatch")


class CatalogError(Rank3Error, ValueError):
    pass


@dataclass
class CatalogEntry:
    name: str
    degree: int
    generators: list  # 1-indexed cycle strings
    claims: dict = field(default_factory=dict)
    provenance: str = ""
    status: str = "unverified"
    verified_at: str | None = None
    mismatches: list = field(default_factory=list)

    def group(self) -> PermGroup:
        text = f"degree {self.degree}\n" + "\n".join(self.generators)
        return parse_group_file(text, name=self.name)

    @classmethod
    def from_group(cls, name, g: PermGroup, claims=None, provenance=""):
        lines = format_group_file(g).splitlines()[1:]
        return cls(name, g.degree, lines, dict(claims or {}), provenance)

    @classmethod
    def from_dict(cls, d):
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(d) - known)
        if unknown:
            raise CatalogError(f"unknown entry fields: {', '.join(unknown)}")
        e = cls(**d)
        bad = sorted(set(e.claims) - set(CLAIM_KEYS))
        if bad:
            raise CatalogError(f"{e.name}: unknown claim keys {', '.join(bad)}")
        if e.status not in STATUSES:
            raise CatalogError(f"{e.name}: bad status {e.status!r}")
        return e


@dataclass
class Verification:
    name: str
    ok: bool
    mismatches: list  # [{"field", "claimed", "computed"}]
    computed: dict


def computed_properties(g: PermGroup, cap=None) -> dict:
    rep = analyze(g, cap=cap)
    out = {
        "order": rep.order,
        "rank": rep.rank,
        "subdegrees": sorted(rep.subdegrees),
        "block_size": rep.block_size,
        "block_count": rep.block_count,
        "class": rep.affine_rank3_class,
    }
    for k in ("semiprimitive", "quasiprimitive", "innately_transitive", "primitive"):
        out[k] = rep.flags[k]
    return to_plain(out)


def _normalize(key, value):
    if key == "subdegrees" and value is not None:
        return sorted(value)
    return value


def verify_entry(entry: CatalogEntry, cap=None, now=None) -> Verification:
    """Recompute every claimed property; mismatches are listed per field."""
    computed = computed_properties(entry.group(), cap=cap)
    mismatches = []
    for key in sorted(entry.claims):
        claimed = _normalize(key, entry.claims[key])
        got = computed.get(key)
        if claimed != got:
            mismatches.append({"field": key, "claimed": claimed, "computed": got})
    entry.status = "verified" if not mismatches else "mismatch"
    entry.mismatches = mismatches
    stamp = now or datetime.now(timezone.utc)
    entry.verified_at = stamp.isoformat(timespec="seconds")
    return Verification(entry.name, not mismatches, mismatches, computed)


class Catalog:
    def __init__(self, path):
        self.path = Path(path)
        self.entries: dict[str, CatalogEntry] = {}
        if self.path.exists():
            self._load()

    def _load(self):
        try:
            data = json.loads(self.path.read_text())
        except json.JSONDecodeError as e:
            raise CatalogError(f"{self.path}: not JSON ({e})") from None
        for d in data.get("entries", []):
            e = CatalogEntry.from_dict(d)
            self.entries[e.name] = e

    def save(self):
        self.path.parent.mkdir(parents=True, exist_ok=True)
        doc = {"entries": [asdict(self.entries[k]) for k in sorted(self.entries)]}
        text = json.dumps(to_plain(doc), indent=2, sort_keys=True) + "\n"
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".catalog-", suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def add(self, entry: CatalogEntry, verify=True, cap=None):
        res = verify_entry(entry, cap=cap) if verify else None
        self.entries[entry.name] = entry
        self.save()
        return res

    def verify(self, name, cap=None) -> Verification:
        if name not in self.entries:
            raise CatalogError(f"no catalog entry named {name!r}")
        res = verify_entry(self.entries[name], cap=cap)
        self.save()
        return res

    def names(self):
        return sorted(self.entries)


def builtin_entries() -> list[CatalogEntry]:
    """The vendored 3.S6 (degree 18) and 2.M12 (degree 24) entries."""
    data_dir = resources.files("rank3kit") / "data"
    doc = json.loads((data_dir / "catalog.json").read_text())
    out = []
    for d in doc["entries"]:
        g = parse_group_file((data_dir / d["generator_file"]).read_text(), name=d["name"])
        out.append(CatalogEntry.from_group(d["name"], g, d["claims"], d["provenance"]))
    return out


def builtin_entry(name) -> CatalogEntry:
    for e in builtin_entries():
        if e.name == name:
            return e
    raise CatalogError(f"no built-in entry named {name!r}")
