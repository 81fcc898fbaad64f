"""Internal homs under the sup metric, and currying against the l1 tensor."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .morphisms import PointMap, is_contraction
from .numerics import DEFAULT_TOL
from .pathconvex import eps_path_metric
from .space import MetricSpace, SemiMetricSpace, tensor

DEFAULT_BUDGET = 10**6
_CHUNK = 1 << 15


class BudgetExceeded(RuntimeError):
    pass


def contraction_table(x: SemiMetricSpace, y: SemiMetricSpace, tol: float = DEFAULT_TOL,
                      budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Every contraction ``x -> y`` as a row of target indices, in lexicographic order."""
    n, m = len(x), len(y)
    total = m ** n
    if total > budget:
        raise BudgetExceeded(f"{m}^{n} = {total} candidate maps exceeds the budget of {budget}")
    if n == 0:
        return np.zeros((1, 0), dtype=int)
    if m == 0:
        return np.zeros((0, n), dtype=int)
    dx = x.dist
    dy = y.dist
    keep = []
    candidates = itertools.product(range(m), repeat=n)
    while True:
        block = np.array(list(itertools.islice(candidates, _CHUNK)), dtype=int)
        if block.size == 0:
            break
        img = dy[block[:, :, None], block[:, None, :]]
        ok = np.all(img <= dx[None] + tol, axis=(1, 2))
        keep.append(block[ok])
    return np.concatenate(keep)


def enumerate_contractions(x: SemiMetricSpace, y: SemiMetricSpace, tol: float = DEFAULT_TOL,
                           budget: int = DEFAULT_BUDGET) -> list[PointMap]:
    """All nonexpansive maps ``x -> y``; borderline (equality) maps are included."""
    return [PointMap.from_indices(x, y, row) for row in contraction_table(x, y, tol, budget)]


def sup_distances(rows_a: np.ndarray, rows_b: np.ndarray, dy: np.ndarray) -> np.ndarray:
    """``max_x d_Y(f(x), g(x))`` for every ``f`` in ``rows_a`` and ``g`` in ``rows_b``."""
    if rows_a.shape[1] == 0:
        return np.zeros((len(rows_a), len(rows_b)))
    return dy[rows_a[:, None, :], rows_b[None, :, :]].max(axis=2)


@dataclass(frozen=True, eq=False)
class HomSpace:
    """Contractions ``source -> target`` as the points ``h0, h1, ...`` of ``base``."""

    source: SemiMetricSpace
    target: SemiMetricSpace
    base: MetricSpace
    table: np.ndarray  # row k: target indices of the map labelled "h{k}"

    @property
    def catalog(self) -> dict[str, PointMap]:
        return {label: PointMap.from_indices(self.source, self.target, row)
                for label, row in zip(self.base.points, self.table)}

    def label_of(self, assignment) -> str:
        """Label of the map given as a dict or a sequence of target indices."""
        if isinstance(assignment, dict):
            key = tuple(self.target.index(assignment[p]) for p in self.source.points)
        else:
            key = tuple(int(i) for i in assignment)
        try:
            return self._lookup[key]
        except KeyError:
            raise KeyError(f"map {key} is not in the hom catalog") from None

    def __post_init__(self):
        object.__setattr__(self, "_lookup", {
            tuple(row.tolist()): label for label, row in zip(self.base.points, self.table)})


def internal_hom(x: SemiMetricSpace, y: SemiMetricSpace, tol: float = DEFAULT_TOL,
                 budget: int = DEFAULT_BUDGET) -> HomSpace:
    table = contraction_table(x, y, tol, budget)
    labels = [f"h{k}" for k in range(len(table))]
    base = MetricSpace(labels, sup_distances(table, table, y.dist), tol)
    return HomSpace(x, y, base, table)


def curry(f: PointMap, z: SemiMetricSpace, x: SemiMetricSpace, hom: HomSpace | None = None,
          tol: float = DEFAULT_TOL, product: SemiMetricSpace | None = None) -> PointMap:
    """Turn ``f: z (x) x -> y`` into ``z -> [x, y]``, sending ``z`` to its slice.

    ``hom`` and ``product`` (the tensor of ``z`` and ``x``) may be passed in
    to avoid rebuilding them for every map.
    """
    if hom is None:
        hom = internal_hom(x, f.target, tol)
    if product is None:
        product = tensor(z, x)
    if f.source != product:
        raise ValueError("curry expects a map out of tensor(z, x)")
    if not is_contraction(f, tol):
        raise ValueError("curry expects a contraction")
    slices = f.indices.reshape(len(z), len(x))
    g = PointMap(z, hom.base, {p: hom.label_of(row) for p, row in zip(z.points, slices)})
    if not is_contraction(g, tol):
        raise AssertionError("curried map is not a contraction")
    return g


def uncurry(g: PointMap, x: SemiMetricSpace, hom: HomSpace, tol: float = DEFAULT_TOL,
            product: SemiMetricSpace | None = None) -> PointMap:
    """Turn ``g: z -> [x, y]`` back into ``z (x) x -> y``."""
    if g.target != hom.base:
        raise ValueError("uncurry expects a map into the hom space")
    if not is_contraction(g, tol):
        raise ValueError("uncurry expects a contraction")
    z = g.source
    rows = hom.table[g.indices] if len(z) else np.zeros((0, len(x)), dtype=int)
    if product is None:
        product = tensor(z, x)
    f = PointMap.from_indices(product, hom.target, rows.reshape(-1))
    if not is_contraction(f, tol):
        raise AssertionError("uncurried map is not a contraction")
    return f


def hom_coreflection(x: SemiMetricSpace, y: SemiMetricSpace, eps: float,
                     tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET) -> MetricSpace:
    """The eps-path metric of the internal hom's sup metric."""
    return eps_path_metric(internal_hom(x, y, tol, budget).base, eps, tol)
