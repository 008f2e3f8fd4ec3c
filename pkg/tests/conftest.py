import time

import numpy as np
import pytest
from hypothesis import strategies as st

from feiso.generators import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    rook_graph,
    shrikhande_graph,
)
from feiso.graph import Graph

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _criteria[number] = (title, rep.outcome, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcome, dur = _criteria[number]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title} ({dur:.1f}s)")


@pytest.fixture
def stopwatch():
    start = time.perf_counter()
    return lambda: time.perf_counter() - start


@pytest.fixture(scope="session")
def named_graphs():
    return {
        "K2": complete_graph(2),
        "K3": complete_graph(3),
        "P3": path_graph(3),
        "C5": cycle_graph(5),
        "C6": cycle_graph(6),
        "K33": complete_bipartite(3, 3),
        "petersen": petersen_graph(),
        "rook": rook_graph(4),
        "shrikhande": shrikhande_graph(),
    }


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, frozenset(e for e, keep in zip(pairs, mask) if keep))


@st.composite
def graphs_with_permutation(draw, min_n=1, max_n=9):
    from feiso.graph import Permutation

    g = draw(graphs(min_n, max_n))
    perm = draw(st.permutations(list(range(g.n))))
    return g, Permutation(tuple(perm))


def random_symmetric_nonnegative(rng: np.random.Generator, n: int, zero_frac: float = 0.0) -> np.ndarray:
    a = rng.random((n, n))
    if zero_frac:
        a[rng.random((n, n)) < zero_frac] = 0.0
    a = np.triu(a)
    return a + np.triu(a, 1).T
