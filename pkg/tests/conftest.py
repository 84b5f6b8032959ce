import os

import numpy as np
import pytest
from hypothesis import strategies as st

import bfa
from bfa import boolfun as bf

SEED = int(os.environ.get("BFA_TEST_SEED", "20240607"))


def pytest_report_header(config):
    return f"bfa test seed: {SEED} (set BFA_TEST_SEED to override)"


@pytest.fixture
def rng(request):
    # one stream per test, derived from the session seed and the test id
    tag = sum(request.node.nodeid.encode())
    return np.random.default_rng([SEED, tag])


def boolfuncs(min_n=1, max_n=8):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.integers(0, (1 << (1 << n)) - 1).map(
            lambda v: bf.from_truth_table(n, [(v >> i) & 1 for i in range(1 << n)])))


def quadratics(min_n=2, max_n=8):
    """Functions of degree exactly 2, drawn through their ANF."""
    def build(n):
        pairs = [(1 << i) | (1 << j) for i in range(n) for j in range(i + 1, n)]
        singles = [0] + [1 << i for i in range(n)]
        return st.tuples(
            st.sets(st.sampled_from(pairs), min_size=1),
            st.sets(st.sampled_from(singles)),
        ).map(lambda t: bf.truth_table(bf.Anf(n, frozenset(t[0] | t[1]))))
    return st.integers(min_n, max_n).flatmap(build)


@pytest.fixture(scope="session")
def worked_pair():
    x = [None] + [bf.variable(4, i) for i in range(1, 5)]
    g = x[1] * x[2] + x[3] * x[4] + 1
    h = x[1] * x[4] + x[2] * x[3]
    return g, h


@pytest.fixture(scope="session")
def catalog_funcs():
    return {name: bfa.catalog(name) for name in bfa.catalog_names()}


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results, key=lambda k: (int(str(k).split("-")[0]), str(k))):
        terminalreporter.write_line(results[key])
