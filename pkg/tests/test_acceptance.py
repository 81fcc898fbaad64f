"""Acceptance criteria 1-11, each at its stated size and tolerance.

Every criterion prints one ``PASS``/``FAIL`` line; the lines are repeated in
pytest's terminal summary. Run directly (``python tests/test_acceptance.py``)
for the lines alone.
"""

from __future__ import annotations

import time

import pytest

from metricglue.proptest import (DEFAULT_SEED, adjunction_suite, convex_completion_suite,
                                 pushout_expansive_suite, pushout_formula_suite,
                                 path_metric_suite, quotient_oracle_suite, star_colimit_suite)
from metricglue.scenarios import hyperbola_orbit, nstr, splice
from metricglue.space import check_metric

TOL = 1e-9
RESULTS: list[str] = []

_cache: dict = {}


def _timed(key, build):
    if key not in _cache:
        t0 = time.perf_counter()
        value = build()
        _cache[key] = (value, time.perf_counter() - t0)
    return _cache[key]


def report(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    RESULTS.append(line)
    print(line)


def _failures(rep, limit=3) -> str:
    return "; ".join(rep.failures[:limit])


def test_01_quotient_oracle():
    rep, elapsed = _timed("quotient", lambda: quotient_oracle_suite(DEFAULT_SEED, count=200,
                                                                     max_points=8, tol=TOL))
    ok = rep.passed and rep.cases == 200 and elapsed < 10.0
    report(1, "quotient = chain oracle", ok,
           f"{rep.cases} cases, {len(rep.failures)} failures, {elapsed:.2f}s (limit 10s)")
    assert rep.cases == 200
    assert rep.passed, _failures(rep)
    assert elapsed < 10.0


def test_02_canonical_maps_expansive():
    rep, _ = _timed("expansive", lambda: pushout_expansive_suite(DEFAULT_SEED, count=100, tol=TOL))
    report(2, "canonical maps C-expansive (isometric at C=1)", rep.passed and rep.cases == 100,
           f"{rep.cases} diagrams, min expansivity / C = {rep.metrics['min_ratio_to_C']:.6g}")
    assert rep.cases == 100
    assert rep.passed, _failures(rep)


def test_03_pushout_formulas():
    rep, _ = _timed("formulas", lambda: pushout_formula_suite(DEFAULT_SEED, count=100, tol=TOL))
    n = rep.metrics["pairs_checked"]
    report(3, "hub / cross-arm / within-arm formulas", rep.passed and rep.cases == 100,
           f"{rep.cases} diagrams, pairs hub={n['hub']} cross={n['cross']} within={n['within']}, "
           f"{len(rep.failures)} mismatches")
    assert rep.cases == 100
    assert min(n.values()) > 0
    assert rep.passed, _failures(rep)


def test_04_star_colimit():
    rep, _ = _timed("star", lambda: star_colimit_suite(DEFAULT_SEED, count=50, tol=TOL))
    report(4, "star colimit = multiple pushout", rep.passed and rep.cases == 50,
           f"{rep.cases} diagrams, {len(rep.failures)} failures")
    assert rep.cases == 50
    assert rep.passed, _failures(rep)


def test_05_adjunction():
    rep, elapsed = _timed("adjunction", lambda: adjunction_suite(DEFAULT_SEED, max_x=3, max_y=3,
                                                                 max_z=2, tol=TOL))
    m = rep.metrics
    ok = rep.passed and elapsed < 60.0
    report(5, "tensor-hom adjunction, exhaustive", ok,
           f"{rep.cases} triples ({m['spaces_x']}x{m['spaces_y']}x{m['spaces_z']}), "
           f"{m['maps_checked']} maps, {len(rep.failures)} failures, {elapsed:.1f}s (limit 60s)")
    assert rep.passed, _failures(rep)
    assert elapsed < 60.0


def test_06_path_metric_laws():
    rep, _ = _timed("path", lambda: path_metric_suite(DEFAULT_SEED, count=100,
                                                      eps_values=(0.25, 1.0, 4.0), tol=TOL))
    report(6, "eps-path metric laws", rep.passed and rep.cases == 100,
           f"{rep.cases} spaces x 3 eps, {len(rep.failures)} failures")
    assert rep.cases == 100
    assert rep.passed, _failures(rep)


def test_07_convex_completion():
    rep, _ = _timed("convex", lambda: convex_completion_suite(DEFAULT_SEED, count=30, step=0.1,
                                                              tol=TOL))
    observed = rep.metrics["max_defect"]
    ok = rep.passed and observed <= 0.1 + TOL
    report(7, "convex completion", ok,
           f"{rep.cases} spaces, observed max midpoint defect {observed:.6g} (bound 0.1)")
    assert rep.cases == 30
    assert rep.passed, _failures(rep)
    assert observed <= 0.1 + TOL


def test_08_splice():
    res, _ = _timed("splice", lambda: splice(levels=5, tol=TOL))
    end = next(c for c in res.checks if c.name == "end_to_end")
    ok = abs(end.value - 1.96875) <= TOL
    report(8, "splice end-to-end", ok, f"{end.value!r} (expected 1.96875)")
    assert ok


def test_09_nstr():
    res, _ = _timed("nstr", lambda: nstr((0.5, 0.25, 0.125), 0.0625, TOL))
    levels = res.data["endpoint_distance_by_level"]
    decreasing = all(b <= a + TOL for a, b in zip(levels, levels[1:]))
    ok = abs(levels[-1] - 1.125) <= TOL and decreasing and min(levels) >= 1.0 - TOL
    report(9, "nstr shared endpoints", ok,
           f"by level {[round(v, 12) for v in levels]} (expected 1.125 last, decreasing, >= 1)")
    assert abs(levels[-1] - 1.125) <= TOL
    assert decreasing and min(levels) >= 1.0 - TOL


def test_10_hyperbola_orbit():
    res, _ = _timed("hyperbola", lambda: hyperbola_orbit(max_n=6, tol=TOL))
    gaps = res.data["successive_distances"]
    ok = len(gaps) == 6 and all(v <= 2.0 ** -n + TOL for n, v in enumerate(gaps, start=1))
    report(10, "hyperbola orbit gaps", ok,
           "gaps " + ", ".join(f"{v:.6g}<={2.0 ** -n:g}" for n, v in enumerate(gaps, start=1)))
    assert ok


def _all_produced_spaces():
    keys = {
        "quotient": lambda: quotient_oracle_suite(DEFAULT_SEED, count=200, max_points=8, tol=TOL),
        "expansive": lambda: pushout_expansive_suite(DEFAULT_SEED, count=100, tol=TOL),
        "formulas": lambda: pushout_formula_suite(DEFAULT_SEED, count=100, tol=TOL),
        "star": lambda: star_colimit_suite(DEFAULT_SEED, count=50, tol=TOL),
        "adjunction": lambda: adjunction_suite(DEFAULT_SEED, max_x=3, max_y=3, max_z=2, tol=TOL),
        "path": lambda: path_metric_suite(DEFAULT_SEED, count=100, eps_values=(0.25, 1.0, 4.0), tol=TOL),
        "convex": lambda: convex_completion_suite(DEFAULT_SEED, count=30, step=0.1, tol=TOL),
    }
    for key, build in keys.items():
        rep, _ = _timed(key, build)
        for space in rep.spaces:
            yield rep.name, space
    for key, build in {"splice": lambda: splice(levels=5, tol=TOL),
                       "nstr": lambda: nstr((0.5, 0.25, 0.125), 0.0625, TOL),
                       "hyperbola": lambda: hyperbola_orbit(max_n=6, tol=TOL)}.items():
        res, _ = _timed(key, build)
        for space in res.spaces.values():
            yield res.name, space


def test_11_metric_axioms_everywhere():
    checked, bad = 0, []
    for source, space in _all_produced_spaces():
        checked += 1
        violations = check_metric(space.points, space.dist, TOL)
        if violations:
            bad.append(f"{source}: {violations[0]}")
    report(11, "every produced space is a metric", not bad,
           f"{checked} spaces validated at 1e-9, {len(bad)} invalid")
    assert checked > 0
    assert not bad, bad[:3]


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
