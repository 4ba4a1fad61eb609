import pytest

from rank3kit.linear_checks import corpus_ambients, proper_subspaces, spot_check


@pytest.mark.parametrize("p,d,count", [(2, 2, 3), (3, 2, 4), (2, 3, 14), (2, 4, 65)])
def test_subspace_counts(p, d, count):
    subs = proper_subspaces(p, d)
    assert len(subs) == count
    assert all(len(s) + 1 in {p**k for k in range(1, d)} for s in subs)


def test_ambient_orders():
    orders = {a.label: a.group.order() for a in corpus_ambients()}
    assert orders == {"GammaL_1(8)": 21, "GammaL_1(9)": 16, "GL_2(3)": 48, "GL_2(4)": 180,
                      "GL_2(2)": 6, "GL_3(2)": 168}


@pytest.mark.parametrize("label", ["GammaL_1(8)", "GammaL_1(9)", "GL_2(3)", "GL_2(2)"])
def test_small_spot_checks(label):
    amb = next(a for a in corpus_ambients() if a.label == label)
    res = spot_check(amb)
    assert res.ok
    assert res.transitive_subgroups >= 1
    assert res.prime_power_index == []


def test_gl32_holds_index_8_subgroup():
    amb = next(a for a in corpus_ambients() if a.label == "GL_3(2)")
    res = spot_check(amb)
    assert res.ok and res.prime_power_index == [168]
