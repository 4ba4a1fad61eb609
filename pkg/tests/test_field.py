import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rank3kit.field import field_of_order, make_field

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


@st.composite
def field_and_elements(draw, k=3):
    F = field_of_order(draw(st.sampled_from(ORDERS)))
    return F, [draw(st.integers(0, F.q - 1)) for _ in range(k)]


@given(field_and_elements())
def test_field_axioms(arg):
    F, (a, b, c) = arg
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1


@given(field_and_elements(2))
def test_frobenius_is_additive_and_multiplicative(arg):
    F, (a, b) = arg
    assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))
    assert F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b))
    assert F.frob(a, F.f) == a


@pytest.mark.parametrize("q", ORDERS)
def test_primitive_element_generates(q):
    F = field_of_order(q)
    assert sorted(F.exp.tolist()) == list(range(1, q))
    assert F.element_order(F.primitive) == q - 1


def test_vectors_round_trip():
    F = make_field(3)
    V = F.vector_table(3)
    assert np.array_equal(F.vector_index(V), np.arange(27))
    # first coordinate most significant
    assert V[1].tolist() == [0, 0, 1]


def test_not_prime_power():
    with pytest.raises(ValueError):
        field_of_order(6)
