import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rank3kit.errors import HypothesisError
from rank3kit.group import PermGroup, subgroup_from_members
from rank3kit.oracles import element_count, enumerate_elements, pair_orbit_count, point_orbits

from conftest import perm_groups, permutations


@pytest.mark.parametrize("n", [1, 2, 3, 5, 7])
def test_named_orders(n):
    import math
    assert PermGroup.symmetric(n).order() == math.factorial(n)
    if n >= 2:
        assert PermGroup.alternating(n).order() == max(math.factorial(n) // 2, 1)
    assert PermGroup.cyclic(n).order() == n


def test_dihedral_order():
    assert PermGroup.dihedral(6).order() == 12


@given(perm_groups())
def test_chain_order_matches_enumeration(g):
    assert g.order() == element_count(g.gen_arrays, g.degree)


@given(perm_groups(transitive=True))
def test_rank_matches_pair_orbits(g):
    assert g.rank() == pair_orbit_count(g.gen_arrays, g.degree)
    assert sum(g.subdegrees()) == g.degree
    assert g.subdegrees()[0] == 1


@given(perm_groups())
def test_orbits_match_oracle(g):
    ours = sorted(sorted(int(x) for x in o) for o in g.orbits())
    labels = point_orbits(g.gen_arrays, g.degree)
    ref = sorted(sorted(np.flatnonzero(labels == c).tolist()) for c in set(labels.tolist()))
    assert ours == ref


@given(perm_groups(), st.data())
def test_membership(g, data):
    E = enumerate_elements(g.gen_arrays, g.degree)
    keys = {r.tobytes() for r in E}
    p = data.draw(permutations(g.degree))
    assert g.contains(p) == (p.tobytes() in keys)
    for row in E[:10]:
        assert g.contains(row)


@given(perm_groups(transitive=True))
def test_orbit_stabilizer(g):
    assert g.order() == g.degree * g.stabilizer(0).order()


@given(perm_groups(max_n=6))
def test_class_equation(g):
    classes = g.conjugacy_classes()
    assert sum(len(c) for c in classes) == g.order()
    assert all(g.order() % len(c) == 0 for c in classes)


def test_s5_classes():
    assert len(PermGroup.symmetric(5).conjugacy_classes()) == 7


@given(perm_groups(max_n=6))
def test_derived_and_center_are_normal(g):
    D = g.derived_subgroup()
    assert D.is_normal_in(g)
    Z = g.center()
    assert Z.is_normal_in(g) and Z.is_abelian()


def test_random_element_lies_in_group():
    g = PermGroup.alternating(6)
    rng = np.random.default_rng(1)
    for _ in range(20):
        assert g.contains(g.random_element(rng).images)


def test_subgroup_from_members():
    g = PermGroup.symmetric(4)
    E = g.element_index().E
    members = [i for i, r in enumerate(E) if r[3] == 3]
    h = subgroup_from_members(4, E, members)
    assert h.order() == 6


def test_rank_needs_transitivity():
    g = PermGroup([[1, 0, 2]], degree=3)
    with pytest.raises(HypothesisError):
        g.rank()


def test_degree_mismatch():
    with pytest.raises(ValueError):
        PermGroup([[1, 0], [0, 2, 1]])
