import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rank3kit.errors import CapacityError, GroupFileError
from rank3kit.group import PermGroup
from rank3kit.smallgroups import (SmallGroupTable, alternating4, automorphism_orbit_count, elementary_abelian,
                                  heisenberg, is_frobenius_with_cyclic_complement, parse_table_text,
                                  quaternion8)

NAMED = {
    "Z_6": lambda: SmallGroupTable.cyclic(6),
    "Z_2^3": lambda: elementary_abelian(2, 3),
    "Q_8": quaternion8,
    "A_4": alternating4,
    "3^(1+2)": lambda: heisenberg(3),
}


@pytest.mark.parametrize("name", sorted(NAMED))
def test_named_tables_are_groups(name):
    t = NAMED[name]()
    t.validate()
    T = t.table
    assert (T[np.arange(t.order), t.inv] == t.identity).all()


@given(st.sampled_from(sorted(NAMED)), st.randoms(use_true_random=False))
def test_automorphism_count_invariant_under_relabeling(name, rnd):
    t = NAMED[name]()
    perm = list(range(t.order))
    rnd.shuffle(perm)
    u = t.relabel(perm)
    u.validate()
    assert len(u.automorphisms()) == len(t.automorphisms())
    assert automorphism_orbit_count(u).orbit_sizes == automorphism_orbit_count(t).orbit_sizes


@pytest.mark.parametrize("name,aut", [("Z_6", 2), ("Z_2^3", 168), ("Q_8", 24), ("A_4", 24), ("3^(1+2)", 432)])
def test_automorphism_group_orders(name, aut):
    assert len(NAMED[name]().automorphisms()) == aut


def test_automorphisms_are_homomorphisms():
    t = quaternion8()
    T = t.table
    for phi in t.automorphisms():
        assert (phi[T] == T[np.ix_(phi, phi)]).all()


def test_special_groups():
    assert heisenberg(3).is_special()
    assert quaternion8().is_special()
    assert not elementary_abelian(2, 3).is_special()
    assert len(heisenberg(3).center()) == 3


def test_frattini_two_ways():
    for t in (quaternion8(), heisenberg(3), SmallGroupTable.cyclic(8)):
        assert sorted(t.frattini_p_group().tolist()) == sorted(t.frattini_by_maximal_subgroups().tolist())


def test_frobenius_detection():
    ok, wit = is_frobenius_with_cyclic_complement(alternating4(), 2)
    assert ok and wit == (2, 3)
    assert not is_frobenius_with_cyclic_complement(SmallGroupTable.cyclic(6), 2)[0]
    assert is_frobenius_with_cyclic_complement(PermGroup.alternating(4), 2)[0]


def test_from_perm_group_matches_order():
    t = SmallGroupTable.from_perm_group(PermGroup.symmetric(4))
    assert t.order == 24 and not t.is_abelian()
    assert len(t.all_subgroups()) == 30


def test_table_text_round_trip():
    t = quaternion8()
    u = parse_table_text(t.to_text())
    assert np.array_equal(u.table, t.table)


@pytest.mark.parametrize("text,msg", [
    ("", "empty"),
    ("size 2\n1 2\n2 1", "header"),
    ("order 2\n1 2", "rows"),
    ("order 2\n1 2\n2 3", "range"),
    ("order 2\n1 2\n1 2", "Latin square"),
])
def test_bad_tables(text, msg):
    with pytest.raises(GroupFileError, match=msg):
        parse_table_text(text)


def test_table_capacity():
    with pytest.raises(CapacityError):
        SmallGroupTable.from_perm_group(PermGroup.symmetric(7))
