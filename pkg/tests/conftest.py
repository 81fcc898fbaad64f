from __future__ import annotations

import numpy as np
import hypothesis.strategies as st
from hypothesis import settings

from metricglue.generators import DYADIC, repair
from metricglue.space import MetricSpace

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def metric_spaces(draw, min_points=1, max_points=6, values=DYADIC, prefix="p"):
    """Random symmetric matrix over ``values``, closed under shortest paths."""
    n = draw(st.integers(min_points, max_points))
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = draw(st.sampled_from(values))
    return MetricSpace([f"{prefix}{i}" for i in range(n)], repair(d))


@st.composite
def maps_between(draw, x, y):
    """Arbitrary (not necessarily contracting) assignment x -> y."""
    return {p: draw(st.sampled_from(y.points)) for p in x.points}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
