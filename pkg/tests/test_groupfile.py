import pytest
from hypothesis import given

from rank3kit.errors import GroupFileError
from rank3kit.groupfile import format_group_file, load_group_file, parse_group_file, write_group_file

from conftest import perm_groups


def test_cyclic_from_cycle():
    assert parse_group_file("degree 3\n(1,2,3)").order() == 3


def test_dihedral_from_images():
    g = parse_group_file("degree 4\nimg: 2 1 4 3\nimg: 2 3 4 1")
    assert g.order() == 8


def test_comments_and_blank_lines():
    g = parse_group_file("# a note\n\ndegree 4  # header\n(1,2) # swap\n\n(3,4)\n")
    assert g.order() == 4


@pytest.mark.parametrize("text,msg", [
    ("degree 3\n(1,2,2)", "line 2: repeated point"),
    ("degree 3\n(1,4)", "line 2: point 4 out of range"),
    ("degree 3\nimg: 1 1 2", "line 2: .*bijection"),
    ("degree 3\nimg: 1 2", "line 2: image line has 2 entries"),
    ("degree 3", "no generators"),
    ("", "empty"),
    ("deg 3\n(1,2)", "header"),
    ("degree x\n(1,2)", "bad degree"),
    ("degree 3\n(1,2)\ndegree 3", "line 3: repeated degree"),
])
def test_errors(text, msg):
    with pytest.raises(GroupFileError, match=msg):
        parse_group_file(text)


@given(perm_groups())
def test_round_trip(g):
    h = parse_group_file(format_group_file(g, note="round trip"))
    assert h.degree == g.degree
    assert h.order() == g.order() and h.is_subgroup_of(g)


def test_file_helpers(tmp_path):
    g = parse_group_file("degree 5\n(1,2,3,4,5)\n(1,2)")
    path = tmp_path / "s5.grp"
    write_group_file(g, path, note="S5")
    h = load_group_file(path)
    assert h.name == "s5" and h.order() == 120
    assert path.read_text().startswith("# S5\ndegree 5\n")


def test_vendored_files_parse():
    from importlib import resources
    data = resources.files("rank3kit") / "data"
    assert parse_group_file((data / "3S6_deg18.grp").read_text()).order() == 2160
