import math

import numpy as np
import pytest
from hypothesis import strategies as st

from evolab.geometry import Polygon


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_polygon(g, n, min_sin=1e-3):
    """Hedgehog with random turning angles on the simplex and p in [-1, 1]."""
    while True:
        theta = g.dirichlet(np.ones(n)) * 2 * math.pi
        if np.all(np.abs(np.sin(theta)) > min_sin):
            break
    alpha = g.uniform(0, 2 * math.pi) + np.concatenate([[0.0], np.cumsum(theta[:-1])])
    return Polygon(alpha, g.uniform(-1, 1, n))


seeds = st.integers(min_value=0, max_value=2**32 - 1)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.LINES):
        terminalreporter.write_line(mod.LINES[number])
