import pytest

from rank3kit.errors import CapacityError, HypothesisError
from rank3kit.examples import (build_affine16, build_extraspecial_holomorph, build_sum_zero_example,
                               build_unitary_sylow, matrix_linear_part)
from rank3kit.structure import is_semiprimitive


def test_affine_pair(affine_pair):
    G1, G2 = affine_pair
    assert G1.order() == G2.order() == 2688
    assert G1.subdegrees() == [1, 7, 8]
    assert G2.subdegrees() == [1, 1, 14]
    assert not is_semiprimitive(G1)
    assert is_semiprimitive(G2)
    assert G2.stabilizer(0).order() == 168


def test_linear_part_fixes_zero():
    H = matrix_linear_part("G1")
    assert [int(x) for x in H.orbit(0)] == [0]
    assert H.order() == 168


def test_affine_unknown_variant():
    with pytest.raises(ValueError):
        build_affine16("G3")


def test_unitary_sylow_q3():
    m = build_unitary_sylow(3)
    assert m.group.degree == 27 and m.group.order() == 216
    assert m.table.is_special() and len(m.table.center()) == 3
    assert sorted(len(o) for o in m.torus_orbits) == [1, 2, 8, 8, 8]
    # claimed rank is 3 but the torus has five orbits on N
    assert m.rank == 5 and m.discrepancy


def test_unitary_sylow_caps():
    with pytest.raises(ValueError):
        build_unitary_sylow(6)
    with pytest.raises(CapacityError):
        build_unitary_sylow(9)


def test_holomorph():
    h = build_extraspecial_holomorph(3, 1)
    G = h.group
    assert h.aut_order == 432
    assert G.degree == 27 and G.order() == 27 * 432
    assert G.subdegrees() == [1, 2, 24]
    # {x -> a x b : ab central} is normal, intransitive and not semiregular
    assert not is_semiprimitive(G)


def test_holomorph_arguments():
    with pytest.raises(HypothesisError):
        build_extraspecial_holomorph(2)
    with pytest.raises(CapacityError):
        build_extraspecial_holomorph(3, 2)


def test_sum_zero():
    G = build_sum_zero_example()
    assert G.degree == 12 and G.order() == 576
    assert G.subdegrees() == [1, 3, 8]
    with pytest.raises(HypothesisError):
        build_sum_zero_example(n=2)


def test_holomorph_witness_normal_subgroup():
    # M = Inn(N) x {x -> x z : z central}: normal, orbit of 1 is Z(N), and Inn(N) fixes 1
    from rank3kit.group import PermGroup
    h = build_extraspecial_holomorph(3, 1)
    t = h.table
    T = t.table
    inner = [T[T[t.inv[a], :], a] for a in range(t.order)]  # x -> a^-1 x a
    central = [T[:, z] for z in t.center()]
    M = PermGroup(inner + central, degree=t.order)
    assert M.order() == 27
    assert M.is_normal_in(h.group)
    assert sorted(int(x) for x in M.orbit(t.identity)) == sorted(int(z) for z in t.center())
    assert M.stabilizer(t.identity).order() == 9
