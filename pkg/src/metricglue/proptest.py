"""Seeded property suites: each construction against an independent check.

Every suite returns a :class:`SuiteReport`; ``failures`` lists human-readable
counterexamples and ``spaces`` keeps the spaces the suite produced so the
metric axioms can be re-checked afterwards.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .diagrams import colimit, star_diagram
from .generators import (all_small_spaces, c_expansive_diagram, random_contraction,
                         random_partition, random_space)
from .gluing import (dii_formula, multiple_pushout, precdx_formula, quotient,
                     quotient_oracle, quotient_semimetric, within_space_distance)
from .homtensor import contraction_table, curry, internal_hom, sup_distances, uncurry
from .morphisms import PointMap, expansivity_constant, is_contraction, is_isometry
from .numerics import DEFAULT_TOL, INF
from .pathconvex import convex_completion, eps_path_metric, midpoint_defect, missing_segment_pairs
from .space import distances_close, tensor

DEFAULT_SEED = 20240607
EXPANSIVITY_CONSTANTS = (0.3, 0.5, 1.0)


@dataclass
class SuiteReport:
    name: str
    seed: int
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    metrics: dict = field(default_factory=dict)
    elapsed: float = 0.0
    spaces: list = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def to_json(self) -> dict:
        return {
            "suite": self.name, "seed": self.seed, "cases": self.cases,
            "passed": self.passed, "failures": self.failures[:50],
            "failure_count": len(self.failures), "metrics": self.metrics,
            "elapsed_s": round(self.elapsed, 3),
        }


def _close(a: float, b: float, tol: float) -> bool:
    if a == INF or b == INF:
        return a == b
    return abs(a - b) <= tol


def quotient_oracle_suite(seed: int = DEFAULT_SEED, count: int = 200, max_points: int = 8,
                          tol: float = DEFAULT_TOL) -> SuiteReport:
    rep = SuiteReport("quotient-oracle", seed)
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    for case in range(count):
        x = random_space(rng, int(rng.integers(1, max_points + 1)))
        rel = random_partition(rng, x.points)
        fast = quotient_semimetric(x, rel)
        slow = quotient_oracle(x, rel)
        if fast.points != slow.points or not distances_close(fast.dist, slow.dist, tol):
            rep.fail(f"case {case}: quotient and oracle disagree for blocks {rel.blocks}")
        space, proj = quotient(x, rel, tol)
        if not is_contraction(proj, tol) or set(proj.assignment.values()) != set(space.points):
            rep.fail(f"case {case}: projection is not a surjective contraction")
        rep.spaces.append(space)
        rep.cases += 1
    rep.elapsed = time.perf_counter() - t0
    return rep


def _diagrams(seed: int, count: int):
    rng = np.random.default_rng(seed)
    for case in range(count):
        c = EXPANSIVITY_CONSTANTS[case % len(EXPANSIVITY_CONSTANTS)]
        yield case, c, c_expansive_diagram(rng, c)


def pushout_expansive_suite(seed: int = DEFAULT_SEED, count: int = 100,
                              tol: float = DEFAULT_TOL) -> SuiteReport:
    """Canonical maps into a pushout of c-expansive arms stay c-expansive."""
    rep = SuiteReport("pushout-expansive", seed)
    t0 = time.perf_counter()
    worst = INF
    for case, c, diagram in _diagrams(seed, count):
        po = multiple_pushout(diagram, tol)
        rep.spaces.append(po.space)
        for i, leg in enumerate(po.legs):
            e = expansivity_constant(leg)
            worst = min(worst, e / c if e != INF else INF)
            if e < c - tol:
                rep.fail(f"case {case} (C={c}): leg {i} has expansivity {e}")
            if c == 1.0 and not is_isometry(leg, tol):
                rep.fail(f"case {case} (C=1): leg {i} is not an isometry")
        rep.cases += 1
    rep.metrics["min_ratio_to_C"] = worst
    rep.elapsed = time.perf_counter() - t0
    return rep


def pushout_formula_suite(seed: int = DEFAULT_SEED, count: int = 100,
                            tol: float = DEFAULT_TOL) -> SuiteReport:
    """Glued distances against the closed-form hub, cross-arm and within-arm formulas."""
    rep = SuiteReport("pushout-formulas", seed)
    t0 = time.perf_counter()
    checked = {"hub": 0, "cross": 0, "within": 0}
    for case, c, diagram in _diagrams(seed, count):
        po = multiple_pushout(diagram, tol)
        rep.spaces.append(po.space)
        sp = po.space
        hub = diagram.hub.points
        for y in hub:
            for y2 in hub:
                got = sp.d(po.hub_map(y), po.hub_map(y2))
                want = precdx_formula(diagram, y, y2)
                checked["hub"] += 1
                if not _close(got, want, tol):
                    rep.fail(f"case {case}: hub pair ({y},{y2}) glued {got} vs formula {want}")
        for i, leg in enumerate(po.legs):
            for i2, leg2 in enumerate(po.legs):
                for x in leg.source.points:
                    for x2 in leg2.source.points:
                        got = sp.d(leg(x), leg2(x2))
                        if i == i2:
                            want = within_space_distance(diagram, i, x, x2)
                            checked["within"] += 1
                        else:
                            want = dii_formula(diagram, i, x, i2, x2)
                            checked["cross"] += 1
                        if not _close(got, want, tol):
                            rep.fail(f"case {case}: ({i}:{x}, {i2}:{x2}) glued {got} vs formula {want}")
        rep.cases += 1
    rep.metrics["pairs_checked"] = checked
    rep.elapsed = time.perf_counter() - t0
    return rep


def star_colimit_suite(seed: int = DEFAULT_SEED, count: int = 50,
                       tol: float = DEFAULT_TOL) -> SuiteReport:
    """Colimit of a star diagram equals the multiple pushout of its arms."""
    rep = SuiteReport("star-colimit", seed)
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    for case in range(count):
        c = EXPANSIVITY_CONSTANTS[case % len(EXPANSIVITY_CONSTANTS)]
        glue = c_expansive_diagram(rng, c)
        po = multiple_pushout(glue, tol)
        sd = star_diagram(glue)
        col = colimit(sd, tol)
        rep.spaces += [po.space, col.space]
        bij: dict[str, str] = {}
        ok = True
        for i, leg in enumerate(po.legs):
            cleg = col.legs[f"X{i}"]
            for x in leg.source.points:
                a, b = leg(x), cleg(x)
                if bij.setdefault(a, b) != b:
                    ok = False
        for y in glue.hub.points:
            if bij.get(po.hub_map(y)) != col.legs["Y"](y):
                ok = False
        if not ok or len(bij) != len(po.space) or set(bij.values()) != set(col.space.points):
            rep.fail(f"case {case}: canonical maps do not induce a bijection")
        else:
            idx = [col.space.index(bij[p]) for p in po.space.points]
            if not distances_close(po.space.dist, col.space.dist[np.ix_(idx, idx)], tol):
                rep.fail(f"case {case}: colimit and pushout distances differ")
        for v, leg in col.legs.items():
            if not is_contraction(leg, tol):
                rep.fail(f"case {case}: canonical map at {v} is not a contraction")
        rep.cases += 1
    rep.elapsed = time.perf_counter() - t0
    return rep


def check_adjunction(x, y, z, tol: float = DEFAULT_TOL, hom=None) -> tuple[list[str], int]:
    """Check hom(z (x) x, y) ~ hom(z, [x, y]) on one triple; returns (failures, maps checked)."""
    failures: list[str] = []
    hom = internal_hom(x, y, tol) if hom is None else hom
    t = tensor(z, x)
    left = contraction_table(t, y, tol)
    right = contraction_table(z, hom.base, tol)
    tag = f"|X|={len(x)} |Y|={len(y)} |Z|={len(z)}"
    if len(left) != len(right):
        return [f"{tag}: {len(left)} maps out of the tensor, {len(right)} into the hom"], 0
    curried = np.empty((len(left), len(z)), dtype=int)
    for k, row in enumerate(left):
        f = PointMap.from_indices(t, y, row)
        g = curry(f, z, x, hom, tol, product=t)
        curried[k] = g.indices
        if uncurry(g, x, hom, tol, product=t).assignment != f.assignment:
            failures.append(f"{tag}: uncurry(curry(f)) != f for row {row.tolist()}")
    # curry(left) == right as sets, plus uncurry o curry = id on left,
    # gives curry o uncurry = id on right without a second pass
    if {tuple(r) for r in curried.tolist()} != {tuple(r) for r in right.tolist()}:
        failures.append(f"{tag}: curry is not a bijection onto hom(Z, [X,Y])")
    d_left = sup_distances(left, left, y.dist)
    d_right = sup_distances(curried, curried, hom.base.dist)
    if not distances_close(d_left, d_right, tol):
        failures.append(f"{tag}: curry does not preserve the sup metric")
    return failures, len(left)


def adjunction_suite(seed: int = DEFAULT_SEED, max_x: int = 3, max_y: int = 3, max_z: int = 2,
                     values=(0.5, 1.0, INF), tol: float = DEFAULT_TOL) -> SuiteReport:
    """Exhaustive: currying is a sup-metric isometric bijection with uncurry as inverse.

    The sweep is deterministic; ``seed`` is recorded only.
    """
    rep = SuiteReport("adjunction", seed)
    t0 = time.perf_counter()
    xs = all_small_spaces(max_x, values, prefix="x")
    ys = all_small_spaces(max_y, values, prefix="y")
    zs = all_small_spaces(max_z, values, prefix="z")
    maps_checked = 0
    for x in xs:
        for y in ys:
            hom = internal_hom(x, y, tol)
            rep.spaces.append(hom.base)
            for z in zs:
                failures, n = check_adjunction(x, y, z, tol, hom)
                rep.failures += failures
                maps_checked += n
                rep.cases += 1
    rep.metrics.update(spaces_x=len(xs), spaces_y=len(ys), spaces_z=len(zs),
                       maps_checked=maps_checked)
    rep.elapsed = time.perf_counter() - t0
    return rep


def path_metric_suite(seed: int = DEFAULT_SEED, count: int = 100, eps_values=(0.25, 1.0, 4.0),
                      max_points: int = 8, tol: float = DEFAULT_TOL) -> SuiteReport:
    rep = SuiteReport("path-metric", seed)
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    eps_values = sorted(eps_values)
    for case in range(count):
        x = random_space(rng, int(rng.integers(1, max_points + 1)))
        y = random_space(rng, int(rng.integers(1, max_points + 1)), prefix="q")
        f = random_contraction(rng, x, y)
        prev = None
        for eps in eps_values:
            de = eps_path_metric(x, eps, tol)
            rep.spaces.append(de)
            if np.any(de.dist < x.dist - tol):
                rep.fail(f"case {case}, eps={eps}: path metric below the original")
            if not np.array_equal(eps_path_metric(de, eps, tol).dist, de.dist):
                rep.fail(f"case {case}, eps={eps}: not idempotent")
            if prev is not None and np.any(de.dist > prev.dist + tol):
                rep.fail(f"case {case}, eps={eps}: larger eps increased a distance")
            prev = de
            fe = PointMap(de, eps_path_metric(y, eps, tol), f.assignment)
            if not is_contraction(fe, tol):
                rep.fail(f"case {case}, eps={eps}: contraction not preserved")
        rep.cases += 1
    rep.elapsed = time.perf_counter() - t0
    return rep


def convex_completion_suite(seed: int = DEFAULT_SEED, count: int = 30, step: float = 0.1,
                            max_points: int = 5, tol: float = DEFAULT_TOL) -> SuiteReport:
    rep = SuiteReport("convex-completion", seed)
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    observed = 0.0
    for case in range(count):
        x = random_space(rng, int(rng.integers(2, max_points + 1)))
        pairs = missing_segment_pairs(x, tol)
        space, emb = convex_completion(x, pairs, step, tol)
        rep.spaces.append(space)
        if not is_isometry(emb, tol):
            rep.fail(f"case {case}: embedding is not an isometry")
        defect = midpoint_defect(space).maximum
        observed = max(observed, defect)
        if defect > step + tol:
            rep.fail(f"case {case}: max midpoint defect {defect} exceeds step {step}")
        rep.cases += 1
    rep.metrics["max_defect"] = observed
    rep.metrics["step"] = step
    rep.elapsed = time.perf_counter() - t0
    return rep


SUITES = {
    "quotient-oracle": quotient_oracle_suite,
    "pushout-expansive": pushout_expansive_suite,
    "pushout-formulas": pushout_formula_suite,
    "star-colimit": star_colimit_suite,
    "adjunction": adjunction_suite,
    "path-metric": path_metric_suite,
    "convex-completion": convex_completion_suite,
}
