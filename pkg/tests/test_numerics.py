import math

import numpy as np
import pytest
import hypothesis.strategies as st
from hypothesis import given

from metricglue.numerics import (INF, dist_from_json, dist_to_json, ext, ext_add, ext_min,
                                 ext_scale, shortest_paths)

ext_dists = st.one_of(st.just(INF), st.floats(0, 1e6, allow_nan=False))


@pytest.mark.parametrize("a, b, expected", [(INF, 3.0, INF), (0.0, 0.0, 0.0), (1.5, 2.25, 3.75)])
def test_ext_add(a, b, expected):
    assert ext_add(a, b) == expected


@pytest.mark.parametrize("values, expected", [([], INF), ([INF, 2.0, 5.0], 2.0), ([INF, INF], INF)])
def test_ext_min(values, expected):
    assert ext_min(values) == expected


@pytest.mark.parametrize("a, c, expected", [(INF, 0.5, INF), (2.0, 0.5, 1.0), (0.0, 7.0, 0.0)])
def test_ext_scale(a, c, expected):
    assert ext_scale(a, c) == expected


@pytest.mark.parametrize("c", [0.0, -1.0])
def test_ext_scale_rejects_nonpositive(c):
    with pytest.raises(ValueError):
        ext_scale(1.0, c)


@pytest.mark.parametrize("bad", [-0.5, float("nan"), "big"])
def test_ext_rejects(bad):
    with pytest.raises(ValueError):
        ext(bad)


def test_ext_accepts_inf_strings():
    assert ext("inf") == INF and ext("Infinity") == INF


@given(ext_dists, ext_dists)
def test_add_commutes_and_saturates(a, b):
    assert ext_add(a, b) == ext_add(b, a)
    assert (ext_add(a, b) == INF) == (a == INF or b == INF)


@given(ext_dists)
def test_json_round_trip(a):
    assert dist_from_json(dist_to_json(a)) == a


def test_json_spells_inf():
    assert dist_to_json(INF) == "inf"


def _relaxation_oracle(w):
    # Bellman-Ford style relaxation until nothing changes
    n = len(w)
    d = np.array(w, dtype=float)
    np.fill_diagonal(d, 0.0)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if d[i, k] + d[k, j] < d[i, j]:
                        d[i, j] = d[i, k] + d[k, j]
                        changed = True
    return d


@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.sampled_from([0.25, 0.5, 1.0, 3.0, INF]), min_size=n, max_size=n),
                       min_size=n, max_size=n)))
def test_shortest_paths_matches_relaxation(rows):
    w = np.array(rows)
    w = np.minimum(w, w.T)
    np.testing.assert_allclose(shortest_paths(w), _relaxation_oracle(w), atol=1e-12)


def test_shortest_paths_keeps_infinite_components():
    w = np.array([[0, 1, INF], [1, 0, INF], [INF, INF, 0]])
    out = shortest_paths(w)
    assert math.isinf(out[0, 2]) and out[0, 1] == 1.0


def test_shortest_paths_empty():
    assert shortest_paths(np.zeros((0, 0))).shape == (0, 0)
