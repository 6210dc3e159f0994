import numpy as np
import pytest
from hypothesis import strategies as st

from meanclt.dist import FiniteDist, standardize

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@st.composite
def finite_dists(draw, min_size=1, max_size=6, centered=False, lo=-5.0, hi=5.0):
    """Laws with well separated support points in [lo, hi] and masses bounded away from 0."""
    m = draw(st.integers(min_size, max_size))
    pts = draw(
        st.lists(st.floats(lo, hi, allow_nan=False), min_size=m, max_size=m, unique=True)
    )
    pts = np.sort(np.array(pts))
    if m > 1 and np.min(np.diff(pts)) < 1e-3:
        pts = np.linspace(lo, hi, m) + np.array(pts) * 1e-4
        pts.sort()
    w = np.array(draw(st.lists(st.floats(0.05, 1.0), min_size=m, max_size=m)))
    p = w / w.sum()
    if centered:
        pts = pts - np.dot(p, pts)
    return FiniteDist.from_points(pts, p)


@st.composite
def standardized_dists(draw, min_size=2, max_size=6):
    d = draw(finite_dists(min_size=max(2, min_size), max_size=max_size, centered=True))
    return standardize(d)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
