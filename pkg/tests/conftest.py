import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rank3kit.group import PermGroup

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def permutations(draw, n=None, min_n=1, max_n=9):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    return np.array(draw(st.permutations(range(n))), dtype=np.intp)


@st.composite
def perm_groups(draw, min_n=2, max_n=8, max_gens=3, transitive=False):
    """Random subgroups of small symmetric groups; optionally forced transitive
    by including an n-cycle."""
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(1, max_gens))
    gens = [draw(permutations(n)) for _ in range(k)]
    if transitive:
        gens.append(np.roll(np.arange(n), -1))
    return PermGroup(gens, degree=n)


@pytest.fixture(scope="session")
def affine_pair():
    from rank3kit.examples import build_affine16
    return build_affine16("G1"), build_affine16("G2")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
