import numpy as np

from rank3kit.oracles import (block_systems_bruteforce, element_count, is_semiprimitive_oracle,
                              multiplication_table_from_elements, enumerate_elements, pair_orbit_count,
                              table_conjugacy_classes)

S4 = [np.array([1, 0, 2, 3]), np.array([1, 2, 3, 0])]
D8 = [np.array([1, 0, 3, 2]), np.array([1, 2, 3, 0])]


def test_counts():
    assert element_count(S4, 4) == 24
    assert pair_orbit_count(S4, 4) == 2
    assert pair_orbit_count(D8, 4) == 3


def test_table_and_classes():
    E = enumerate_elements(S4, 4)
    T = multiplication_table_from_elements(E)
    ident = int(np.flatnonzero((E == np.arange(4)).all(axis=1))[0])
    assert sorted(len(c) for c in table_conjugacy_classes(T, ident)) == [1, 3, 6, 6, 8]


def test_blocks_and_semiprimitivity():
    assert len(block_systems_bruteforce(D8, 4)) == 3  # trivial, trivial, {13|24}
    assert not is_semiprimitive_oracle(D8, 4)
    assert is_semiprimitive_oracle(S4, 4)
