"""Seeded random instances for the property suites.

Raw random matrices rarely satisfy the triangle inequality, so every
generator passes its matrix through the shortest-path closure first.
"""

from __future__ import annotations

import itertools

import numpy as np

from .gluing import EquivRelation, GlueDiagram
from .morphisms import PointMap, is_contraction
from .numerics import INF, shortest_paths
from .space import MetricSpace

DYADIC = (0.25, 0.5, 1.0, 2.0, INF)


def repair(matrix) -> np.ndarray:
    """Largest metric below a symmetric nonnegative matrix."""
    d = np.asarray(matrix, dtype=float)
    return shortest_paths(np.minimum(d, d.T))


def random_space(rng: np.random.Generator, n: int, values=DYADIC, prefix: str = "p") -> MetricSpace:
    iu = np.triu_indices(n, 1)
    d = np.zeros((n, n))
    d[iu] = rng.choice(np.asarray(values, dtype=float), size=len(iu[0]))
    d = d + d.T
    return MetricSpace([f"{prefix}{i}" for i in range(n)], repair(d))


def random_partition(rng: np.random.Generator, points) -> EquivRelation:
    points = list(points)
    k = int(rng.integers(1, len(points) + 1)) if points else 1
    labels = rng.integers(0, k, size=len(points))
    blocks: dict[int, list[str]] = {}
    for p, b in zip(points, labels):
        blocks.setdefault(int(b), []).append(p)
    return EquivRelation(points, blocks.values())


def attach_points(rng: np.random.Generator, base: np.ndarray, extra: int,
                  lengths=(0.25, 0.5, 1.0, 2.0)) -> np.ndarray:
    """Extend a metric by ``extra`` points without changing existing distances.

    Each new point hangs off one or two existing points; with two anchors
    ``a, b`` its edge lengths sum to at least ``d(a, b)``, so no old pair
    gets a shortcut through it.
    """
    d = np.array(base, dtype=float)
    for _ in range(extra):
        n = len(d)
        w = np.full((n + 1, n + 1), INF)
        w[:n, :n] = d
        if n == 0:
            d = np.zeros((1, 1))
            continue
        a = int(rng.integers(n))
        ra = float(rng.choice(lengths))
        w[a, n] = w[n, a] = ra
        b = int(rng.integers(n))
        if b != a and rng.random() < 0.5 and np.isfinite(d[a, b]):
            rb = max(float(rng.choice(lengths)), d[a, b] - ra)
            w[b, n] = w[n, b] = rb
        d = shortest_paths(w)
    m = len(base)
    old = d[:m, :m]
    base = np.asarray(base, dtype=float)
    if not (np.array_equal(np.isinf(old), np.isinf(base))
            and np.allclose(old[np.isfinite(base)], base[np.isfinite(base)], rtol=0, atol=1e-12)):
        raise AssertionError("attaching points changed existing distances")
    # undo last-ulp drift from the closure
    d[:m, :m] = base
    return d


def c_expansive_diagram(rng: np.random.Generator, c: float, hub_size: int | None = None,
                        arms: int | None = None, max_extra: int = 3) -> GlueDiagram:
    """Glue diagram whose arms are contractions and ``c``-expansive.

    Each arm rescales the hub metric by its own factor in ``[c, 1]`` and then
    hangs a few extra points off the image.
    """
    hub_size = int(rng.integers(1, 5)) if hub_size is None else hub_size
    arms = int(rng.integers(1, 4)) if arms is None else arms
    hub = random_space(rng, hub_size, prefix="y")
    maps = []
    for i in range(arms):
        s = float(rng.uniform(c, 1.0)) if c < 1 else 1.0
        if rng.random() < 0.25:
            s = c
        base = hub.dist * s
        d = attach_points(rng, base, int(rng.integers(0, max_extra + 1)))
        # shuffle so the hub image is not always the leading block
        perm = rng.permutation(len(d))
        d = d[np.ix_(perm, perm)]
        target = MetricSpace([f"a{i}_{k}" for k in range(len(d))], d)
        where = {int(old): new for new, old in enumerate(perm)}
        maps.append(PointMap(hub, target, {y: target.points[where[k]] for k, y in enumerate(hub.points)}))
    return GlueDiagram(hub, maps)


def random_contraction(rng: np.random.Generator, x: MetricSpace, y: MetricSpace,
                       attempts: int = 200) -> PointMap:
    """A random nonexpansive map; falls back to a constant map."""
    for _ in range(attempts):
        idx = rng.integers(len(y), size=len(x))
        f = PointMap.from_indices(x, y, idx)
        if is_contraction(f):
            return f
    return PointMap.from_indices(x, y, np.zeros(len(x), dtype=int))


def all_small_spaces(max_points: int, values=(0.5, 1.0, INF), min_points: int = 0,
                     prefix: str = "p") -> list[MetricSpace]:
    """Every repaired space on ``min_points..max_points`` points with off-diagonals from ``values``.

    Spaces whose repaired matrices coincide are listed once.
    """
    out = []
    for n in range(min_points, max_points + 1):
        seen = set()
        iu = np.triu_indices(n, 1)
        for combo in itertools.product(values, repeat=len(iu[0])):
            d = np.zeros((n, n))
            d[iu] = combo
            d = repair(d + d.T)
            key = d.tobytes()
            if key in seen:
                continue
            seen.add(key)
            out.append(MetricSpace([f"{prefix}{i}" for i in range(n)], d))
    return out
