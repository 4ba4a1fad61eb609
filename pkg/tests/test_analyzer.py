import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rank3kit.analyzer import analyze, classify_affine_rank3, pointwise_kernel_check, two_block_check
from rank3kit.blocks import conjugate_group
from rank3kit.catalog import builtin_entry
from rank3kit.errors import HypothesisError
from rank3kit.examples import build_extraspecial_holomorph, build_sum_zero_example, build_unitary_sylow
from rank3kit.group import PermGroup
from rank3kit.linear import FamilySpec, delta_action


@pytest.fixture(scope="module")
def gamma343():
    return delta_action(FamilySpec.named(3, 4, 3, "GammaL"))


def _invariants(rep):
    assert rep.block_size * rep.block_count == rep.degree
    assert rep.kernel_order * rep.block_group_order == rep.order
    if rep.affine_rank3_class == "C":
        assert rep.K_pointwise_B_transitive_on_other


def test_affine_pair_reports(affine_pair):
    for G in affine_pair:
        rep = analyze(G)
        _invariants(rep)
        assert rep.affine_rank3_class == "B"
        assert rep.evidence["B_aut_orbit_counts"] == [2]
    rep = analyze(affine_pair[1])
    assert (rep.block_size, rep.block_count) == (2, 8)
    assert rep.block_group_type == rep.induced_on_block_type == "affine"


def test_gamma343_report(gamma343):
    rep = analyze(gamma343)
    _invariants(rep)
    assert (rep.block_size, rep.block_count, rep.kernel_order) == (3, 21, 3)
    assert rep.block_group_type == "almost-simple" and rep.block_group_socle_order == 20160
    assert rep.K_on_B_regular and rep.K_pointwise_B_order == 1
    assert rep.affine_rank3_class == "A"


def test_sum_zero_is_class_c():
    G = build_sum_zero_example()
    rep = analyze(G)
    _invariants(rep)
    assert rep.affine_rank3_class == "C"
    assert pointwise_kernel_check(G)["rank"] == 3


def test_holomorph_is_class_b():
    rep = analyze(build_extraspecial_holomorph(3).group)
    assert rep.affine_rank3_class == "B"
    assert rep.evidence["B_regular_normal_tag"] == "special-p-expp"
    assert rep.evidence["B_orbit_sizes"] == [1, 2, 24]


def test_catalog_groups_are_class_a():
    for name, blocks in (("3.S6-deg18", (3, 6)), ("2.M12-deg24", (2, 12))):
        rep = analyze(builtin_entry(name).group())
        assert (rep.block_size, rep.block_count) == blocks
        assert rep.affine_rank3_class == "A"
        assert rep.flags["semiprimitive"] and not rep.flags["innately_transitive"]


def test_every_clause_is_recorded(gamma343):
    ev = analyze(gamma343).evidence
    for key in ("C_KB_transitive_on_other_block", "A_innately_transitive",
                "B_regular_normal_with_at_most_3_aut_orbits", "D_KB_nontrivial_intransitive"):
        assert key in ev


def test_non_rank3_is_not_applicable():
    rep = analyze(build_unitary_sylow(3).group)
    assert rep.rank == 5 and rep.affine_rank3_class == "not-applicable"
    rep = analyze(PermGroup.symmetric(5))
    assert rep.affine_rank3_class == "not-applicable"


def test_two_block_check(gamma343):
    res = two_block_check(gamma343)
    assert res["ok"] and res["index"] == 9 == res["block_size_squared"]


def test_two_block_check_refuses_rank4():
    G = delta_action(FamilySpec.named(3, 4, 3, "GL"))
    with pytest.raises(HypothesisError):
        two_block_check(G)


def test_pointwise_kernel_check_negative(gamma343, affine_pair):
    assert not pointwise_kernel_check(gamma343)["KB_transitive_on_other"]
    assert pointwise_kernel_check(affine_pair[1])["KB_order"] == 1


def test_intransitive_rejected():
    with pytest.raises(HypothesisError):
        analyze(PermGroup([[1, 0, 2]], degree=3))


@settings(max_examples=5)
@given(st.integers(0, 2**32 - 1))
def test_class_is_invariant_under_relabeling(seed):
    G = build_sum_zero_example()
    sigma = np.random.default_rng(seed).permutation(G.degree)
    H = conjugate_group(G, sigma)
    a, b = analyze(G), analyze(H)
    assert a.affine_rank3_class == b.affine_rank3_class
    assert (a.order, a.subdegrees, a.kernel_order, a.block_size) == (b.order, b.subdegrees, b.kernel_order,
                                                                     b.block_size)


def test_classify_without_report(affine_pair):
    assert classify_affine_rank3(affine_pair[1]) == "B"
