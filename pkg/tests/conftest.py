from __future__ import annotations

import os
import warnings

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from sdlab.graph import Graph, graph_from_mask, labeled_count

# numba probes for TBB at import; the fallback threading layer is fine here
warnings.filterwarnings("ignore", message=".*TBB.*")

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=2000, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 9) -> Graph:
    """Uniform random labeled graph on a drawn number of vertices."""
    n = draw(st.integers(min_n, max_n))
    return graph_from_mask(n, draw(st.integers(0, labeled_count(n) - 1)))


@pytest.fixture
def k13() -> Graph:
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def k3_plus_isolated() -> Graph:
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def k23() -> Graph:
    return Graph.from_edges(5, [(u, v) for u in range(2) for v in range(2, 5)])


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
