"""Self-checking gluing scenarios at desk scale.

``nstr``
    Segments of lengths ``1 + eps`` glued along their endpoints. The shared
    endpoints end up ``1 + min(eps)`` apart; adding levels with smaller
    ``eps`` pushes the distance down toward 1 without reaching it.
``splice``
    Intervals of lengths ``1, 1/2, ..., 2^-M`` split into even and odd
    families and glued end to end through a discrete hub. The two free ends
    are ``sum_k 2^-k = 2 - 2^-M`` apart.
``hyperbola-orbit``
    Columns ``x = 2^-n`` above the hyperbola ``xy >= 1`` with a self-loop
    shifting up by one (clamped at a common top height). Every column
    collapses to one orbit class; neighbouring classes ``n - 1, n`` sit at
    distance ``2^-(n-1) - 2^-n = 2^-n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .diagrams import Edge, OrientedGraph, SpaceDiagram, colimit
from .gluing import GlueDiagram, multiple_pushout
from .morphisms import PointMap
from .numerics import DEFAULT_TOL
from .space import MetricSpace, coproduct, discrete_space, discretize_segment, two_point


@dataclass
class Check:
    name: str
    value: float
    expected: float
    tol: float
    relation: str = "=="  # "==" or "<="
    formula: str = ""

    @property
    def passed(self) -> bool:
        if self.relation == "<=":
            return self.value <= self.expected + self.tol
        return abs(self.value - self.expected) <= self.tol

    def to_json(self) -> dict:
        return {"check": self.name, "value": self.value, "expected": self.expected,
                "relation": self.relation, "tol": self.tol, "formula": self.formula,
                "passed": self.passed}


@dataclass
class ScenarioResult:
    name: str
    params: dict
    checks: list[Check] = field(default_factory=list)
    spaces: dict[str, MetricSpace] = field(default_factory=dict)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"scenario": self.name, "params": self.params, "passed": self.passed,
                "checks": [c.to_json() for c in self.checks], "data": self.data}


def nstr_diagram(eps_values, step: float) -> GlueDiagram:
    hub = two_point(float("inf"))
    arms = []
    for eps in eps_values:
        seg = discretize_segment(1.0 + eps, step)
        arms.append(PointMap(hub, seg, {"x0": seg.endpoints[0], "x1": seg.endpoints[1]}))
    return GlueDiagram(hub, arms)


def nstr(eps_values=(0.5, 0.25, 0.125), step: float = 0.0625, tol: float = DEFAULT_TOL) -> ScenarioResult:
    eps_values = [float(e) for e in eps_values]
    if not eps_values or min(eps_values) <= 0:
        raise ValueError("nstr needs at least one positive eps")
    res = ScenarioResult("nstr", {"eps": eps_values, "step": step})
    by_level = []
    for k in range(1, len(eps_values) + 1):
        po = multiple_pushout(nstr_diagram(eps_values[:k], step), tol)
        a, b = po.hub_map("x0"), po.hub_map("x1")
        by_level.append(po.space.d(a, b))
    res.spaces["glued"] = po.space
    res.data["endpoint_distance_by_level"] = by_level
    res.checks.append(Check("endpoint_distance", by_level[-1], 1.0 + min(eps_values), tol,
                            formula="min_k (1 + eps_k)"))
    for k, v in enumerate(by_level):
        res.checks.append(Check(f"level_{k + 1}", v, 1.0 + min(eps_values[:k + 1]), tol,
                                formula="min over the first levels of (1 + eps)"))
    steps_up = max((b - a for a, b in zip(by_level, by_level[1:])), default=0.0)
    res.checks.append(Check("monotone_nonincreasing", steps_up, 0.0, tol, "<=",
                            formula="appending a level never increases the distance"))
    res.checks.append(Check("above_limit", 1.0 - by_level[-1], 0.0, tol, "<=",
                            formula="distance stays >= 1"))
    return res


def splice_diagram(levels: int, step: float | None = None):
    """Even and odd interval families plus the discrete junction hub.

    Returns the diagram and, for reporting, where the two free ends live.
    """
    if levels < 1:
        raise ValueError("splice needs at least one level")
    lengths = [2.0 ** -k for k in range(levels + 1)]
    step = 2.0 ** -(levels + 1) if step is None else step
    segs = [discretize_segment(length, step, prefix=f"i{k}s") for k, length in enumerate(lengths)]
    even = [k for k in range(levels + 1) if k % 2 == 0]
    odd = [k for k in range(levels + 1) if k % 2 == 1]
    x1, inj1 = coproduct([segs[k] for k in even], tags=[str(k) for k in even])
    x2, inj2 = coproduct([segs[k] for k in odd], tags=[str(k) for k in odd])
    where = {k: (0, inj1[even.index(k)]) for k in even}
    where.update({k: (1, inj2[odd.index(k)]) for k in odd})

    hub = discrete_space(levels)
    maps: list[dict[str, str]] = [{}, {}]
    for k, y in enumerate(hub.points):
        # junction k joins the right end of interval k to the left end of interval k + 1
        arm_r, inj_r = where[k]
        arm_l, inj_l = where[k + 1]
        maps[arm_r][y] = inj_r[segs[k].endpoints[1]]
        maps[arm_l][y] = inj_l[segs[k + 1].endpoints[0]]
    diagram = GlueDiagram(hub, [PointMap(hub, x1, maps[0]), PointMap(hub, x2, maps[1])])
    left_end = (where[0][0], where[0][1][segs[0].endpoints[0]])
    arm, inj = where[levels]
    right_end = (arm, inj[segs[levels].endpoints[1]])
    return diagram, left_end, right_end


def splice(levels: int = 5, step: float | None = None, tol: float = DEFAULT_TOL) -> ScenarioResult:
    diagram, (ia, a), (ib, b) = splice_diagram(levels, step)
    res = ScenarioResult("splice", {"levels": levels, "step": step})
    po = multiple_pushout(diagram, tol)
    end_to_end = po.space.d(po.legs[ia](a), po.legs[ib](b))
    d = po.space.dist
    diameter = float(d[np.isfinite(d)].max()) if len(d) else 0.0
    expected = sum(2.0 ** -k for k in range(levels + 1))
    res.spaces["glued"] = po.space
    res.checks.append(Check("end_to_end", end_to_end, expected, tol,
                            formula="sum_{k=0}^{M} 2^-k = 2 - 2^-M"))
    res.checks.append(Check("diameter", diameter, expected, tol,
                            formula="the free ends realise the diameter"))
    res.data["points"] = len(po.space)
    return res


def hyperbola_space(max_n: int = 6) -> tuple[MetricSpace, dict[int, list[str]]]:
    """Columns ``x = 2^-n`` (``n <= max_n``) at integer heights ``2^n .. 2^max_n + 1``."""
    top = 2 ** max_n + 1
    labels, coords, columns = [], [], {}
    for n in range(max_n + 1):
        col = []
        for h in range(2 ** n, top + 1):
            label = f"c{n}h{h}"
            labels.append(label)
            coords.append((2.0 ** -n, float(h)))
            col.append(label)
        columns[n] = col
    xy = np.array(coords)
    d = np.sqrt(((xy[:, None, :] - xy[None, :, :]) ** 2).sum(axis=2))
    return MetricSpace(labels, d), columns


def hyperbola_diagram(max_n: int = 6) -> tuple[SpaceDiagram, dict[int, list[str]]]:
    space, columns = hyperbola_space(max_n)
    shift = {}
    for col in columns.values():
        for lower, upper in zip(col, col[1:]):
            shift[lower] = upper
        shift[col[-1]] = col[-1]
    graph = OrientedGraph(("X",), (Edge("phi", "X", "X"),))
    return SpaceDiagram(graph, {"X": space}, {"phi": PointMap(space, space, shift)}), columns


def hyperbola_orbit(max_n: int = 6, tol: float = DEFAULT_TOL) -> ScenarioResult:
    diagram, columns = hyperbola_diagram(max_n)
    res = ScenarioResult("hyperbola-orbit", {"max_n": max_n})
    col = colimit(diagram, tol)
    leg = col.legs["X"]
    classes = {n: {leg(p) for p in pts} for n, pts in columns.items()}
    res.spaces["orbits"] = col.space
    res.data["orbit_classes"] = len(col.space)
    successive = []
    for n in range(1, max_n + 1):
        (a,), (b,) = classes[n - 1], classes[n]
        v = col.space.d(a, b)
        successive.append(v)
        res.checks.append(Check(f"orbit_gap_{n}", v, 2.0 ** -n, tol, "<=",
                                formula="2^-n; a finite sample cannot exceed the continuum gap"))
    res.data["successive_distances"] = successive
    res.checks.append(Check("one_class_per_column", float(max(len(c) for c in classes.values())),
                            1.0, 0.0, formula="the shift orbit of a column is the whole column"))
    return res


SCENARIOS = {
    "nstr": nstr,
    "splice": splice,
    "hyperbola-orbit": hyperbola_orbit,
}


def scenario_corpus() -> list[str]:
    return list(SCENARIOS)
