import pytest
from hypothesis import given, settings

from rank3kit.group import PermGroup
from rank3kit.oracles import is_semiprimitive_oracle
from rank3kit.structure import (is_innately_transitive, is_primitive, is_quasiprimitive, is_semiprimitive,
                                largest_normal_p_subgroup, minimal_normal_subgroups, socle_and_type,
                                structure_flags)

from conftest import perm_groups


@settings(max_examples=25)
@given(perm_groups(max_n=6, transitive=True))
def test_semiprimitive_matches_oracle(g):
    assert is_semiprimitive(g) == is_semiprimitive_oracle(g.gen_arrays, g.degree)


@given(perm_groups(max_n=8, transitive=True))
def test_flag_implications(g):
    # structure_flags asserts primitive => quasi => innately => semi
    f = structure_flags(g)
    assert not f.primitive or f.quasiprimitive


def test_known_flags():
    assert is_primitive(PermGroup.symmetric(5))
    assert not is_primitive(PermGroup.dihedral(4))
    assert is_quasiprimitive(PermGroup.alternating(5))
    assert is_innately_transitive(PermGroup.cyclic(7))
    assert not is_semiprimitive(PermGroup.dihedral(4))


@pytest.mark.parametrize("g,kind,socle_order", [
    (PermGroup.symmetric(4), "affine", 4),
    (PermGroup.symmetric(5), "almost-simple", 60),
    (PermGroup.cyclic(6), "other", 6),
    (PermGroup.cyclic(5), "affine", 5),
])
def test_socle_types(g, kind, socle_order):
    info = socle_and_type(g)
    assert info.type == kind
    assert info.socle.order() == socle_order


def test_minimal_normals_of_s4():
    mins = minimal_normal_subgroups(PermGroup.symmetric(4))
    assert [m.order() for m in mins] == [4]


def test_largest_normal_p_subgroup():
    assert largest_normal_p_subgroup(PermGroup.symmetric(4), 2).order() == 4
    assert largest_normal_p_subgroup(PermGroup.symmetric(4), 3).order() == 1
