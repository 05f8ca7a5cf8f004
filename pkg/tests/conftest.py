import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from finconv.spaces import PseudoSpace, SpaceMap, transitive_closure

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@st.composite
def spaces(draw, min_points=1, max_points=4, topological=False, prefix=None):
    n = draw(st.integers(min_points, max_points))
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    adj = np.array(bits, dtype=bool).reshape(n, n) | np.eye(n, dtype=bool)
    if topological:
        adj = transitive_closure(adj)
    points = tuple(range(n)) if prefix is None else tuple(f"{prefix}{i}" for i in range(n))
    return PseudoSpace(points, adj)


@st.composite
def functions(draw, X, Y):
    idx = draw(st.lists(st.integers(0, Y.n - 1), min_size=X.n, max_size=X.n))
    return SpaceMap.from_indices(X, Y, idx)


@pytest.fixture
def rng():
    return np.random.default_rng(20260101)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(lines):
        terminalreporter.write_line(lines[number])
