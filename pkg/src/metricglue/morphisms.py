"""Maps between finite spaces and their metric certificates."""

from __future__ import annotations

from typing import Mapping

import numpy as np

from .numerics import DEFAULT_TOL, INF
from .space import SemiMetricSpace


class PointMap:
    """A total function from the points of ``source`` to the points of ``target``."""

    def __init__(self, source: SemiMetricSpace, target: SemiMetricSpace,
                 assignment: Mapping[str, str]):
        missing = [p for p in source.points if p not in assignment]
        if missing:
            raise ValueError(f"map is not total; unassigned: {missing[:5]}")
        extra = [p for p in assignment if p not in source]
        if extra:
            raise ValueError(f"map assigns unknown source points: {extra[:5]}")
        bad = [v for v in assignment.values() if v not in target]
        if bad:
            raise ValueError(f"map hits unknown target points: {bad[:5]}")
        self.source = source
        self.target = target
        self.assignment = {p: assignment[p] for p in source.points}
        idx = np.array([target.index(assignment[p]) for p in source.points], dtype=int)
        idx.setflags(write=False)
        self.indices = idx

    @classmethod
    def from_indices(cls, source, target, indices) -> "PointMap":
        """Build from target row indices, one per source point (no label lookups)."""
        idx = np.array(indices, dtype=int).reshape(-1)
        if len(idx) != len(source) or (len(idx) and (idx.min() < 0 or idx.max() >= len(target))):
            raise ValueError("index map does not fit the source and target")
        idx.setflags(write=False)
        f = cls.__new__(cls)
        f.source, f.target, f.indices = source, target, idx
        tp = target.points
        f.assignment = dict(zip(source.points, (tp[i] for i in idx.tolist())))
        return f

    def __call__(self, p: str) -> str:
        return self.assignment[p]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.assignment == other.assignment)

    def __repr__(self) -> str:
        return f"PointMap({len(self.source)} -> {len(self.target)} points)"

    def image_distances(self) -> np.ndarray:
        """``d_Y(f x, f x')`` for all source pairs."""
        idx = self.indices
        return self.target.dist[idx[:, None], idx[None, :]]


def identity(space: SemiMetricSpace) -> PointMap:
    return PointMap(space, space, {p: p for p in space.points})


def constant(source: SemiMetricSpace, target: SemiMetricSpace, value: str) -> PointMap:
    return PointMap(source, target, {p: value for p in source.points})


def _pairs(f: PointMap):
    n = len(f.source)
    iu = np.triu_indices(n, 1)
    return f.source.dist[iu], f.image_distances()[iu]


def lipschitz_constant(f: PointMap) -> float:
    """Smallest ``L`` with ``d_Y(fx, fx') <= L d_X(x, x')``.

    Pairs infinitely far apart in both spaces are ignored; a finite pair sent
    to an infinite one (or a zero pair sent to a positive one) gives ``INF``.
    """
    dx, dy = _pairs(f)
    keep = ~(np.isinf(dx) & np.isinf(dy)) & ~((dx == 0) & (dy == 0))
    dx, dy = dx[keep], dy[keep]
    if dx.size == 0:
        return 0.0
    if np.any(np.isinf(dy)) or np.any((dx == 0) & (dy > 0)):
        return INF
    with np.errstate(divide="ignore"):
        ratios = np.where(np.isinf(dx), 0.0, dy / np.where(dx == 0, 1.0, dx))
    return float(ratios.max())


def expansivity_constant(f: PointMap) -> float:
    """Largest ``C`` with ``d_Y(fx, fx') >= C d_X(x, x')``; ``INF`` when no pair constrains it."""
    dx, dy = _pairs(f)
    # pairs that every C satisfies: image infinitely far, or source at distance 0
    keep = ~np.isinf(dy) & (dx > 0)
    dx, dy = dx[keep], dy[keep]
    if dx.size == 0:
        return INF
    if np.any(np.isinf(dx)):
        return 0.0
    return float((dy / dx).min())


def is_contraction(f: PointMap, tol: float = DEFAULT_TOL) -> bool:
    """``d_Y(fx, fx') <= d_X(x, x') + tol`` for every pair."""
    return bool((f.image_distances() <= f.source.dist + tol).all())


def is_c_expansive(f: PointMap, c: float, tol: float = DEFAULT_TOL) -> bool:
    if not c > 0:
        raise ValueError("expansivity constant must be positive")
    dx = f.source.dist
    dy = f.image_distances()
    with np.errstate(invalid="ignore"):
        ok = (dy >= c * dx - tol) | np.isinf(dy)
    return bool(np.all(ok))


def is_injective(f: PointMap) -> bool:
    return len(set(f.indices.tolist())) == len(f.indices)


def is_isometry(f: PointMap, tol: float = DEFAULT_TOL) -> bool:
    """Injective and distance preserving; infinite distances must stay infinite."""
    if not is_injective(f):
        return False
    dx = f.source.dist
    dy = f.image_distances()
    if not np.array_equal(np.isinf(dx), np.isinf(dy)):
        return False
    fin = np.isfinite(dx)
    return bool(np.all(np.abs(dx[fin] - dy[fin]) <= tol))


def compose(g: PointMap, f: PointMap) -> PointMap:
    """``g o f``: apply ``f`` first."""
    if f.target != g.source:
        raise ValueError("cannot compose: target of f is not the source of g")
    return PointMap(f.source, g.target, {p: g.assignment[q] for p, q in f.assignment.items()})
