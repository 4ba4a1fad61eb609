import numpy as np
import pytest
from hypothesis import given

from rank3kit.blocks import (BlockActions, BlockSystem, all_block_systems, conjugate_group, is_block,
                             minimal_block_system, nontrivial_block_systems, nontrivial_block_systems_rank3)
from rank3kit.errors import HypothesisError
from rank3kit.group import PermGroup
from rank3kit.oracles import block_systems_bruteforce, minimal_block_bruteforce

from conftest import perm_groups


def _as_sets(systems):
    return {frozenset(frozenset(p) for p in s.parts) for s in systems}


@given(perm_groups(max_n=9, transitive=True))
def test_block_systems_match_bruteforce(g):
    assert _as_sets(all_block_systems(g)) == block_systems_bruteforce(g.gen_arrays, g.degree)


@given(perm_groups(max_n=9, transitive=True))
def test_minimal_block_matches_bruteforce(g):
    for x in range(1, g.degree):
        bs = minimal_block_system(g, (0, x))
        assert set(bs.block_containing(0)) == minimal_block_bruteforce(g.gen_arrays, g.degree, {0, x})


def test_square_symmetries_have_one_nontrivial_system():
    g = PermGroup.dihedral(4)
    systems = nontrivial_block_systems(g)
    assert [s.parts for s in systems] == [((0, 2), (1, 3))]


def test_cyclic_6_systems():
    systems = nontrivial_block_systems(PermGroup.cyclic(6))
    assert sorted(s.block_size for s in systems) == [2, 3]


def test_is_block():
    g = PermGroup.dihedral(4)
    assert is_block(g, [0, 2])
    assert not is_block(g, [0, 1])


def test_block_actions_wreath():
    # S_2 wr S_3 on 6 points, blocks {0,1},{2,3},{4,5}
    g = PermGroup([[1, 0, 2, 3, 4, 5], [2, 3, 4, 5, 0, 1], [2, 3, 0, 1, 4, 5]], degree=6)
    bs = BlockSystem.from_parts(6, [(0, 1), (2, 3), (4, 5)])
    act = BlockActions(g, bs)
    assert g.order() == 48
    assert act.kernel().order() == 8
    assert act.action_on_blocks().order() == 6
    assert act.action_on_block(0).order() == 2
    assert act.pointwise_block_kernel(0).order() == 4
    assert act.kernel().order() * act.action_on_blocks().order() == g.order()


def test_rank3_systems_requires_rank3():
    with pytest.raises(HypothesisError):
        nontrivial_block_systems_rank3(PermGroup.cyclic(5))


@given(perm_groups(max_n=8, transitive=True))
def test_conjugation_preserves_block_counts(g):
    sigma = np.random.default_rng(g.degree).permutation(g.degree)
    h = conjugate_group(g, sigma)
    assert h.order() == g.order()
    assert sorted(s.block_size for s in all_block_systems(h)) == sorted(s.block_size for s in all_block_systems(g))
