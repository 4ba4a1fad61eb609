import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rank3kit.field import field_of_order
from rank3kit.linear import (CosetQuotient, DeltaDomain, FamilySpec, classical_order, delta_action,
                             expected_suborbits, computed_suborbits, family_grid, format_tag,
                             linear_group_on_vectors, not_innately_condition, order_gl, order_sl, parse_tag,
                             rank3_family_predicate, scan_family, suborbit_checks)


def test_classical_orders():
    assert order_sl(2, 3) == 24
    assert order_gl(3, 4) == 181440
    assert classical_order("GammaL", 3, 4) == 362880


@pytest.mark.parametrize("kind,d,q", [("GL", 2, 3), ("SL", 2, 5), ("GL", 3, 2), ("SL", 3, 3)])
def test_linear_groups_on_vectors_have_classical_order(kind, d, q):
    G = linear_group_on_vectors(kind, d, field_of_order(q))
    assert G.order() == classical_order(kind, d, q)


@st.composite
def quotients(draw):
    p, f = draw(st.sampled_from([(2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]))
    q = p**f
    m = draw(st.sampled_from([x for x in range(1, q) if (q - 1) % x == 0]))
    return CosetQuotient(m, f, p)


@given(quotients(), st.data())
def test_quotient_is_a_group(Q, data):
    els = Q.elements()
    a, b, c = (data.draw(st.sampled_from(els)) for _ in range(3))
    assert Q.mul(Q.mul(a, b), c) == Q.mul(a, Q.mul(b, c))
    assert Q.mul((0, 0), a) == a == Q.mul(a, (0, 0))
    assert any(Q.mul(a, x) == (0, 0) for x in els)


@given(quotients())
def test_subgroups_have_lagrange_orders(Q):
    n = Q.m * Q.f
    for tags, H in Q.subgroups():
        assert n % len(H) == 0
        assert Q.generated(tags) == H


@given(st.integers(0, 9), st.integers(0, 3))
def test_tag_round_trip(i, j):
    assert parse_tag(format_tag((i, j))) == (i, j)


def test_family_spec_parse_and_label():
    s = FamilySpec.parse("d=3,q=4,r=3,gens=delta,phi")
    assert s.selector == ((0, 1), (1, 0))
    assert FamilySpec.parse(s.label()) == s
    assert FamilySpec.parse("d=2,q=5,r=2,gens=none").selector == ()
    with pytest.raises(ValueError):
        FamilySpec.parse("d=3,q=4,r=5")
    with pytest.raises(ValueError):
        FamilySpec.parse("d=3,q=4")


@pytest.mark.parametrize("d,q,r", [(2, 5, 2), (2, 7, 3), (3, 3, 2), (3, 4, 3)])
def test_delta_domain_size(d, q, r):
    dom = DeltaDomain(field_of_order(q), d, r)
    assert dom.size == r * (q**d - 1) // (q - 1)


@pytest.mark.parametrize("label", [
    "d=3,q=4,r=3,gens=delta,phi",
    "d=3,q=4,r=3,gens=phi",
    "d=3,q=4,r=3,gens=delta",
    "d=2,q=7,r=2,gens=delta",
    "d=2,q=9,r=4,gens=phi",
])
def test_predicted_order_matches_chain(label):
    s = FamilySpec.parse(label)
    assert delta_action(s).order() == s.predicted_order()


def test_343_family():
    gam = FamilySpec.named(3, 4, 3, "GammaL")
    G = delta_action(gam)
    assert G.degree == 63 and G.rank() == 3 and G.subdegrees() == [1, 2, 60]
    assert delta_action(FamilySpec.named(3, 4, 3, "GL")).rank() == 4
    pred = rank3_family_predicate(gam)
    assert pred.rank3 and pred.semiprimitive_not_innately
    assert not_innately_condition(3, 4, 3)


@pytest.mark.parametrize("d,q,r", [(d, q, r) for d, q, r in family_grid((2, 3), (3, 4, 5, 7)) if q**d < 100])
def test_small_scan_has_no_disagreements(d, q, r):
    rows = scan_family(d, q, r)
    assert rows
    assert all(row.agree is not False for row in rows)
    assert all(row.order == row.predicted_order for row in rows)


def test_d2_q1mod4_needs_delta_squared_test():
    # for q = 1 mod 4, <SLbar, delta^2> is rank 4 even though it is not inside SigmaLbar
    s = FamilySpec.parse("d=2,q=5,r=2,gens=delta^2")
    pred = rank3_family_predicate(s)
    assert delta_action(s).rank() == 4
    assert pred.rank3 is False
    assert not pred.reasons["inside_SigmaLbar"]


@pytest.mark.parametrize("d,q", [(2, 3), (2, 4), (3, 2), (3, 3)])
def test_vector_suborbits(d, q):
    assert all(c.ok for c in suborbit_checks(d, q))


@pytest.mark.parametrize("d,q,r", [(2, 5, 2), (2, 7, 2), (3, 3, 2), (3, 4, 3)])
def test_delta_suborbits(d, q, r):
    checks = suborbit_checks(d, q, r)
    assert checks and all(c.ok for c in checks)


def test_expected_suborbits_partition_domain():
    s = FamilySpec.named(3, 4, 3, "GL")
    parts = expected_suborbits(s, "GLbar")
    assert sum(len(p) for p in parts) == s.delta_size
    ours = sorted(sorted(p) for p in parts)
    assert ours == sorted(sorted(p) for p in computed_suborbits(delta_action(s)))
