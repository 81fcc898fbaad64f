"""Discrete intrinsic metrics, midpoint defects, and convex completion."""

from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np

from .gluing import GlueDiagram, multiple_pushout
from .morphisms import PointMap, is_isometry
from .numerics import DEFAULT_TOL, INF, shortest_paths
from .space import MetricSpace, SemiMetricSpace, coproduct, discretize_segment, two_point


class PairSet(frozenset):
    """Unordered pairs of distinct labels, each stored sorted."""

    def __new__(cls, pairs: Iterable[tuple[str, str]] = ()):
        norm = []
        for a, b in pairs:
            if a == b:
                raise ValueError(f"pair {(a, b)!r} does not join distinct points")
            norm.append(tuple(sorted((a, b))))
        return super().__new__(cls, norm)

    def sorted(self) -> list[tuple[str, str]]:
        return sorted(self)


def eps_path_metric(x: SemiMetricSpace, eps: float, tol: float = DEFAULT_TOL) -> MetricSpace:
    """Shortest chains whose individual steps are at most ``eps``.

    The finite stand-in for the length metric: a curve becomes a chain of
    short hops. Points with no admissible chain end up infinitely far apart.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    d = x.dist
    w = np.where(d <= eps + tol, d, INF)
    cls = SemiMetricSpace if x.semi else MetricSpace
    return cls(x.points, shortest_paths(w))


class MidpointDefect(NamedTuple):
    pairs: dict[tuple[str, str], float]
    maximum: float


def midpoint_defect(x: SemiMetricSpace) -> MidpointDefect:
    """How far each finite-distance pair is from having an exact midpoint.

    ``defect(x, x') = min_z max(|d(x,z) - h|, |d(x',z) - h|)`` with ``h`` half
    of ``d(x, x')``. Pairs at infinite distance are skipped.
    """
    d = x.dist
    n = len(x)
    pts = x.points
    out: dict[tuple[str, str], float] = {}
    for i in range(n):
        js = np.flatnonzero(np.isfinite(d[i]) & (np.arange(n) > i))
        if js.size == 0:
            continue
        half = d[i, js] / 2.0
        # rows: candidate pair partner j; columns: candidate midpoint z
        near_i = np.abs(d[i][None, :] - half[:, None])
        near_j = np.abs(d[js] - half[:, None])
        defect = np.maximum(near_i, near_j).min(axis=1)
        for j, v in zip(js, defect):
            out[(pts[i], pts[j])] = float(v)
    return MidpointDefect(out, max(out.values(), default=0.0))


def missing_segment_pairs(x: SemiMetricSpace, tol: float = DEFAULT_TOL) -> PairSet:
    """Finite-distance pairs without a midpoint (defect above ``tol``)."""
    return PairSet(p for p, v in midpoint_defect(x).pairs.items() if v > tol)


def convex_completion(x: MetricSpace, pairs: Iterable[tuple[str, str]], step: float,
                      tol: float = DEFAULT_TOL):
    """Glue a sampled segment of length ``d(a, b)`` between each pair ``(a, b)``.

    All segments go on in one multiple pushout whose hub is a disjoint union
    of two-point spaces. Returns ``(space, embedding)``; the embedding of
    ``x`` is checked to be an isometry.
    """
    pairs = PairSet(pairs).sorted()
    if not step > 0:
        raise ValueError("step must be positive")
    lengths = []
    for a, b in pairs:
        delta = x.d(a, b)
        if delta == INF or delta == 0:
            raise ValueError(f"pair {(a, b)!r} is at distance {delta}; need finite and positive")
        lengths.append(delta)
    if not pairs:
        empty = MetricSpace([], [])
        result = multiple_pushout(GlueDiagram(empty, [PointMap(empty, x, {})]), tol)
        return result.space, result.legs[0]

    hub, hub_inj = coproduct([two_point(delta) for delta in lengths])
    segs = [discretize_segment(delta, step) for delta in lengths]
    seg_union, seg_inj = coproduct(segs)
    into_x, into_segs = {}, {}
    for (a, b), hi, seg, si in zip(pairs, hub_inj, segs, seg_inj):
        into_x[hi["x0"]], into_x[hi["x1"]] = a, b
        into_segs[hi["x0"]] = si[seg.endpoints[0]]
        into_segs[hi["x1"]] = si[seg.endpoints[1]]
    diagram = GlueDiagram(hub, [PointMap(hub, x, into_x), PointMap(hub, seg_union, into_segs)])
    result = multiple_pushout(diagram, tol)
    embedding = result.legs[0]
    if not is_isometry(embedding, tol):
        raise AssertionError("original space does not embed isometrically")
    return result.space, embedding
