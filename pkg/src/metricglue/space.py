"""Finite extended metric spaces and their basic constructors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .numerics import DEFAULT_TOL, INF, ext
from ._unionfind import DisjointSet


@dataclass(frozen=True)
class Violation:
    axiom: str  # "shape", "negative", "diagonal", "symmetry", "nondegeneracy", "triangle", "labels"
    points: tuple[str, ...]
    detail: str

    def __str__(self) -> str:
        where = ", ".join(self.points)
        return f"{self.axiom} ({where}): {self.detail}"


class MetricError(ValueError):
    """Raised when a matrix fails the (extended) metric axioms."""

    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        lines = [str(v) for v in self.violations[:10]]
        if len(self.violations) > 10:
            lines.append(f"... and {len(self.violations) - 10} more")
        super().__init__("invalid metric:\n  " + "\n  ".join(lines))


def check_metric(points: Sequence[str], matrix, tol: float = DEFAULT_TOL,
                 *, semi: bool = False) -> list[Violation]:
    """List every axiom violation of ``matrix`` over ``points``.

    Triangle violations report one witnessing triple per offending pair.
    Pass ``semi=True`` to skip the non-degeneracy axiom.
    """
    points = list(points)
    out: list[Violation] = []
    if len(set(points)) != len(points) or any(not isinstance(p, str) or not p for p in points):
        out.append(Violation("labels", (), "point labels must be unique nonempty strings"))
    try:
        d = np.asarray(matrix, dtype=float)
    except (TypeError, ValueError) as exc:
        return out + [Violation("shape", (), f"not a numeric matrix: {exc}")]
    n = len(points)
    if d.shape != (n, n):
        return out + [Violation("shape", (), f"matrix shape {d.shape} does not match {n} points")]
    if n == 0:
        return out

    neg = np.isnan(d) | (d < 0)
    if neg.any():
        for i, j in np.argwhere(neg):
            out.append(Violation("negative", (points[i], points[j]), f"entry {float(d[i, j]):.12g}"))
        return out
    diag = np.diag(d)
    if diag.any():
        for i in np.flatnonzero(diag != 0):
            out.append(Violation("diagonal", (points[i],), f"d(x,x) = {float(d[i, i]):.12g}"))
    asym = d != d.T
    if asym.any():
        for i, j in np.argwhere(np.triu(asym, 1)):
            out.append(Violation("symmetry", (points[i], points[j]), f"{float(d[i, j]):.12g} != {float(d[j, i]):.12g}"))
    if not semi:
        close = d < tol
        np.fill_diagonal(close, False)
        if close.any():
            for i, j in np.argwhere(np.triu(close, 1)):
                out.append(Violation("nondegeneracy", (points[i], points[j]),
                                     f"distinct points at distance {float(d[i, j]):.12g}"))

    # O(n^3) exhaustive, one intermediate point at a time
    worst = None
    for k in range(n):
        hit = d > d[:, k, None] + d[None, k, :] + tol
        if hit.any():
            if worst is None:
                worst = np.full((n, n), -1, dtype=int)
            worst[hit & (worst < 0)] = k
    if worst is not None:
        for i, j in np.argwhere(np.triu(worst >= 0, 1)):
            k = worst[i, j]
            out.append(Violation("triangle", (points[i], points[k], points[j]),
                                 f"{float(d[i, j]):.12g} > {float(d[i, k]):.12g} + {float(d[k, j]):.12g}"))
    return out


class SemiMetricSpace:
    """Finite point set with a symmetric matrix of extended distances.

    Distinct points may sit at distance zero. Instances are immutable.
    """

    semi = True

    def __init__(self, points: Iterable[str], dist, tol: float = DEFAULT_TOL):
        points = tuple(points)
        d = np.array(dist, dtype=float)
        if not points and d.size == 0:
            d = d.reshape(0, 0)
        violations = check_metric(points, d, tol, semi=self.semi)
        if violations:
            raise MetricError(violations)
        d.setflags(write=False)
        self._points = points
        self._dist = d
        self._index = {p: i for i, p in enumerate(points)}

    @property
    def points(self) -> tuple[str, ...]:
        return self._points

    @property
    def dist(self) -> np.ndarray:
        """Read-only distance matrix, rows and columns in ``points`` order."""
        return self._dist

    def index(self, p: str) -> int:
        try:
            return self._index[p]
        except KeyError:
            raise KeyError(f"unknown point {p!r}") from None

    def d(self, p: str, q: str) -> float:
        return float(self._dist[self.index(p), self.index(q)])

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self):
        return iter(self._points)

    def __contains__(self, p) -> bool:
        return p in self._index

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, SemiMetricSpace):
            return NotImplemented
        return (self._points == other._points
                and np.array_equal(self._dist, other._dist))

    def __hash__(self) -> int:
        return hash((self._points, self._dist.tobytes()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({len(self)} points)"

    def subspace(self, points: Sequence[str]) -> "SemiMetricSpace":
        idx = [self.index(p) for p in points]
        return type(self)(points, self._dist[np.ix_(idx, idx)])

    def relabel(self, labels: Sequence[str]) -> "SemiMetricSpace":
        return type(self)(labels, self._dist)


class MetricSpace(SemiMetricSpace):
    """Finite extended metric space: distinct points are at positive distance."""

    semi = False


class Segment(MetricSpace):
    """Uniform sample of an interval; ``endpoints`` name its two ends."""

    def __init__(self, points, dist, tol: float = DEFAULT_TOL):
        super().__init__(points, dist, tol)
        self.endpoints = (self.points[0], self.points[-1])
        self.length = float(self.dist[0, -1])

    def subspace(self, points):
        idx = [self.index(p) for p in points]
        return MetricSpace(points, self.dist[np.ix_(idx, idx)])


def validate_metric(points: Sequence[str], matrix, tol: float = DEFAULT_TOL) -> MetricSpace:
    """Build a :class:`MetricSpace`, raising :class:`MetricError` with every violation."""
    return MetricSpace(points, matrix, tol)


def is_isometric_under(x: SemiMetricSpace, y: SemiMetricSpace, bijection: dict,
                       tol: float = DEFAULT_TOL) -> bool:
    """True if ``bijection`` (label of x -> label of y) preserves all distances."""
    if len(x) != len(y) or len(set(bijection.values())) != len(x):
        return False
    idx = [y.index(bijection[p]) for p in x.points]
    return distances_close(x.dist, y.dist[np.ix_(idx, idx)], tol)


def distances_close(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Entrywise equality within ``tol``; infinite entries must match exactly."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        return False
    inf_a, inf_b = np.isinf(a), np.isinf(b)
    if not np.array_equal(inf_a, inf_b):
        return False
    fin = ~inf_a
    return bool(np.all(np.abs(a[fin] - b[fin]) <= tol))


def two_point(delta) -> MetricSpace:
    """The two-point space ``{x0, x1}`` at distance ``delta``."""
    delta = ext(delta)
    if delta == 0:
        raise ValueError("two_point needs a positive distance")
    return MetricSpace(("x0", "x1"), [[0.0, delta], [delta, 0.0]])


def discrete_space(n: int) -> MetricSpace:
    if n < 0:
        raise ValueError("n must be >= 0")
    d = np.full((n, n), INF)
    np.fill_diagonal(d, 0.0)
    return MetricSpace([f"p{i}" for i in range(n)], d)


def singleton() -> MetricSpace:
    return discrete_space(1)


def discretize_segment(length: float, step: float, prefix: str = "s") -> Segment:
    """Uniform grid ``s0..sn`` on ``[0, length]`` whose spacing never exceeds ``step``."""
    if not step > 0:
        raise ValueError("step must be positive")
    if not length >= 0 or math.isinf(length):
        raise ValueError("length must be finite and >= 0")
    n = math.ceil(length / step) if length > 0 else 0
    k = np.arange(n + 1)
    d = np.abs(k[:, None] - k[None, :]) * (length / n) if n else np.zeros((1, 1))
    return Segment([f"{prefix}{i}" for i in range(n + 1)], d)


def tensor(x: SemiMetricSpace, y: SemiMetricSpace, sep: str = "|") -> MetricSpace:
    """Cartesian product with the l1 (sum) metric; points labelled ``"x|y"``."""
    labels = [f"{p}{sep}{q}" for p in x.points for q in y.points]
    if len(set(labels)) != len(labels):
        raise ValueError(f"label collision in tensor product; choose a separator other than {sep!r}")
    d = (x.dist[:, None, :, None] + y.dist[None, :, None, :]).reshape(len(labels), len(labels))
    cls = MetricSpace if not (x.semi or y.semi) else SemiMetricSpace
    return cls(labels, d)


def coproduct(spaces: Sequence[SemiMetricSpace], tags: Sequence[str] | None = None):
    """Disjoint union with infinite cross distances.

    Points are labelled ``"tag:label"`` (tags default to ``0, 1, ...``).
    Returns ``(space, injections)`` where ``injections[i]`` maps labels of
    ``spaces[i]`` to labels of the union.
    """
    spaces = list(spaces)
    tags = [str(i) for i in range(len(spaces))] if tags is None else [str(t) for t in tags]
    if len(set(tags)) != len(tags):
        raise ValueError("coproduct tags must be distinct")
    labels: list[str] = []
    injections: list[dict[str, str]] = []
    for tag, s in zip(tags, spaces):
        inj = {p: f"{tag}:{p}" for p in s.points}
        injections.append(inj)
        labels.extend(inj.values())
    n = len(labels)
    d = np.full((n, n), INF)
    off = 0
    for s in spaces:
        m = len(s)
        d[off:off + m, off:off + m] = s.dist
        off += m
    semi = any(s.semi for s in spaces)
    return (SemiMetricSpace if semi else MetricSpace)(labels, d), injections


def components(x: SemiMetricSpace) -> list[tuple[tuple[str, ...], SemiMetricSpace]]:
    """Finite-distance components as ``(labels, induced subspace)``, in point order."""
    ds = DisjointSet(x.points)
    for i, j in np.argwhere(np.triu(np.isfinite(x.dist), 1)):
        ds.union(x.points[i], x.points[j])
    blocks = ds.blocks(order=x.points)
    return [(b, x.subspace(b)) for b in blocks]
