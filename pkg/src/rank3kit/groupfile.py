"""Plain-text group files.

Format::

    # comments anywhere
    degree 4
    (1,2)(3,4)
    img: 2 3 4 1

Each non-comment line after the header is one generator, in cycle notation
or as ``img:`` followed by the images of 1..n. Points are 1-indexed.
"""

from __future__ import annotations

from pathlib import Path

from rank3kit.errors import GroupFileError
from rank3kit.group import PermGroup
from rank3kit.perm import Permutation, parse_permutation


def _content_lines(text):
    for i, raw in enumerate(text.splitlines(), start=1):
        ln = raw.split("#", 1)[0].strip()
        if ln:
            yield i, ln


def parse_group_file(text: str, name=None) -> PermGroup:
    lines = list(_content_lines(text))
    if not lines:
        raise GroupFileError("empty group file")
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "degree":
        raise GroupFileError("expected header 'degree n'", lineno)
    try:
        n = int(parts[1])
    except ValueError:
        raise GroupFileError(f"bad degree {parts[1]!r}", lineno) from None
    if n < 1:
        raise GroupFileError("degree must be positive", lineno)
    gens = []
    for lineno, ln in lines[1:]:
        if ln.startswith("degree"):
            raise GroupFileError("repeated degree header", lineno)
        try:
            gens.append(parse_permutation(ln, n))
        except GroupFileError as e:
            raise GroupFileError(str(e), lineno) from None
        except ValueError as e:
            raise GroupFileError(str(e), lineno) from None
    if not gens:
        raise GroupFileError("no generators given")
    return PermGroup([g.images for g in gens], degree=n, name=name)


def format_group_file(g: PermGroup, note=None) -> str:
    out = []
    if note:
        out.extend(f"# {ln}" for ln in note.splitlines())
    out.append(f"degree {g.degree}")
    for arr in g.gen_arrays:
        out.append(Permutation(arr, check=False).to_cycle_string())
    if not g.gen_arrays:
        out.append("()")  # keep trivial groups readable
    return "\n".join(out) + "\n"


def load_group_file(path, name=None) -> PermGroup:
    path = Path(path)
    return parse_group_file(path.read_text(), name=name or path.stem)


def write_group_file(g: PermGroup, path, note=None):
    Path(path).write_text(format_group_file(g, note))
