"""Gluing: quotient semi-metrics, chains, and multiple pushouts.

The quotient distance between two classes is the cheapest chain
``(p_0, q_0), ..., (p_n, q_n)`` with ``p_0 = x``, ``q_n = x'`` and each
``q_s`` equivalent to ``p_{s+1}``, the cost being the sum of ``d(p_s, q_s)``.
:func:`quotient` computes it as a shortest path on the graph of all pairs
plus zero-length edges inside each class; :func:`quotient_oracle` computes
the same thing by a bounded dynamic program over chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from ._unionfind import DisjointSet
from .morphisms import PointMap, compose, is_contraction
from .numerics import DEFAULT_TOL, INF, ext_add, ext_min, shortest_paths
from .space import MetricSpace, SemiMetricSpace, coproduct


class EquivRelation:
    """A partition of a space's points; each block is represented by its smallest label."""

    def __init__(self, points: Sequence[str], blocks: Iterable[Iterable[str]]):
        points = tuple(points)
        seen: dict[str, int] = {}
        canon = []
        for block in blocks:
            block = tuple(sorted(block))
            if not block:
                raise ValueError("empty block in partition")
            for p in block:
                if p in seen:
                    raise ValueError(f"point {p!r} appears in two blocks")
                seen[p] = -1
            canon.append(block)
        unknown = [p for p in seen if p not in set(points)]
        if unknown:
            raise ValueError(f"partition names unknown points: {unknown[:5]}")
        missing = [p for p in points if p not in seen]
        if missing:
            raise ValueError(f"partition does not cover: {missing[:5]}")
        canon.sort()
        self.points = points
        self.blocks: tuple[tuple[str, ...], ...] = tuple(canon)
        self._block_of = {p: b for b, block in enumerate(self.blocks) for p in block}

    @classmethod
    def discrete(cls, points: Sequence[str]) -> "EquivRelation":
        return cls(points, [[p] for p in points])

    @classmethod
    def from_pairs(cls, points: Sequence[str], pairs: Iterable[tuple[str, str]]) -> "EquivRelation":
        """Equivalence relation generated by ``pairs``."""
        ds = DisjointSet(points)
        for a, b in pairs:
            if a not in ds.parent or b not in ds.parent:
                raise ValueError(f"unknown point in pair {(a, b)!r}")
            ds.union(a, b)
        return cls(points, ds.blocks(order=points))

    def block_index(self, p: str) -> int:
        return self._block_of[p]

    def representative(self, p: str) -> str:
        return self.blocks[self._block_of[p]][0]

    def related(self, p: str, q: str) -> bool:
        return self._block_of[p] == self._block_of[q]

    def __len__(self) -> int:
        return len(self.blocks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EquivRelation):
            return NotImplemented
        return set(self.points) == set(other.points) and self.blocks == other.blocks

    def __repr__(self) -> str:
        return f"EquivRelation({list(map(list, self.blocks))})"


Chain = list[tuple[str, str]]


class BrokenChainError(ValueError):
    def __init__(self, index: int, q: str, p: str):
        self.index = index
        super().__init__(f"chain link {index} is broken: {q!r} is not related to {p!r}")


def _check_links(rel: EquivRelation, chain: Chain) -> None:
    for s in range(len(chain) - 1):
        q, p = chain[s][1], chain[s + 1][0]
        if not rel.related(q, p):
            raise BrokenChainError(s, q, p)


def chain_cost(x: SemiMetricSpace, rel: EquivRelation, chain: Chain) -> float:
    """Saturating sum of ``d(p_s, q_s)`` along a linked chain."""
    _check_links(rel, chain)
    total = 0.0
    for p, q in chain:
        total = ext_add(total, x.d(p, q))
    return total


def streamline(x: SemiMetricSpace, rel: EquivRelation, chain: Chain) -> Chain | None:
    """Collapse trivial links ``q_s == p_{s+1}``.

    Returns ``None`` when some pair is infinitely far apart: such a chain
    costs ``INF`` and plays no part in the infimum. The result never costs
    more than the input.
    """
    _check_links(rel, chain)
    if any(x.d(p, q) == INF for p, q in chain):
        return None
    out: Chain = []
    for p, q in chain:
        if out and out[-1][1] == p:
            # d(p0, p) + d(p, q) >= d(p0, q)
            out[-1] = (out[-1][0], q)
        else:
            out.append((p, q))
    return out


def _closure(x: SemiMetricSpace, rel: EquivRelation) -> np.ndarray:
    """Point-level shortest-path closure with zero-cost hops inside blocks."""
    w = np.array(x.dist, dtype=float)
    for block in rel.blocks:
        idx = [x.index(p) for p in block]
        w[np.ix_(idx, idx)] = 0.0
    return shortest_paths(w)


def quotient_semimetric(x: SemiMetricSpace, rel: EquivRelation) -> SemiMetricSpace:
    """Quotient semi-metric on the block representatives, before zero-distance merging."""
    d = _closure(x, rel)
    reps = [x.index(b[0]) for b in rel.blocks]
    return SemiMetricSpace([b[0] for b in rel.blocks], d[np.ix_(reps, reps)])


def quotient(x: SemiMetricSpace, rel: EquivRelation, tol: float = DEFAULT_TOL):
    """Glue ``x`` along ``rel``; classes closer than ``tol`` are then identified.

    Returns ``(space, projection)``; the projection is a surjective contraction.
    """
    semi = quotient_semimetric(x, rel)
    d = semi.dist
    reps = semi.points
    ds = DisjointSet(range(len(reps)))
    for i, j in np.argwhere(np.triu(d < tol, 1)):
        ds.union(int(i), int(j))
    groups = ds.blocks(order=range(len(reps)))
    if len(groups) == len(reps):
        merged = d
    else:
        w = np.array(d, dtype=float)
        for g in groups:
            w[np.ix_(g, g)] = 0.0
        w = shortest_paths(w)
        first = [g[0] for g in groups]
        merged = w[np.ix_(first, first)]
    labels = [min(reps[i] for i in g) for g in groups]
    space = MetricSpace(labels, merged, tol)
    label_of_rep = {reps[i]: labels[k] for k, g in enumerate(groups) for i in g}
    proj = PointMap(x, space, {p: label_of_rep[rel.representative(p)] for p in x.points})
    if not is_contraction(proj, tol):
        raise AssertionError("quotient projection is not a contraction")
    return space, proj


def quotient_oracle(x: SemiMetricSpace, rel: EquivRelation, max_points: int = 12) -> SemiMetricSpace:
    """Quotient semi-metric by direct dynamic programming over chains.

    ``best[q]`` after ``n`` rounds is the cheapest chain of ``n + 1`` pairs
    starting at ``x`` with last point ``q``. Chain length is capped at
    ``len(rel) + 1`` pairs: an optimal chain need not enter any class twice.
    """
    n = len(x)
    if n > max_points:
        raise ValueError(f"oracle limited to {max_points} points, got {n}")
    pts = x.points
    d = [[float(v) for v in row] for row in x.dist]
    cls = [rel.block_index(p) for p in pts]
    reps = [b[0] for b in rel.blocks]
    out = np.zeros((len(reps), len(reps)))
    for a, rep in enumerate(reps):
        best = list(d[x.index(rep)])
        reach = list(best)
        for _ in range(len(rel)):
            # cheapest chain ending anywhere in each class
            at_class = [INF] * len(reps)
            for q in range(n):
                at_class[cls[q]] = min(at_class[cls[q]], best[q])
            best = [ext_min(ext_add(at_class[cls[p]], d[p][r]) for p in range(n))
                    for r in range(n)]
            reach = [min(u, v) for u, v in zip(reach, best)]
        for b in range(len(reps)):
            # q_n may be any member of the target class: append the pair (x', x')
            out[a, b] = ext_min(reach[q] for q in range(n) if cls[q] == b)
    out = np.minimum(out, out.T)
    np.fill_diagonal(out, 0.0)
    return SemiMetricSpace(reps, out)


@dataclass(frozen=True)
class GlueDiagram:
    """A hub space with maps ``j_i: hub -> X_i`` (the arms)."""

    hub: SemiMetricSpace
    arms: tuple[PointMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "arms", tuple(self.arms))
        if not self.arms:
            raise ValueError("a glue diagram needs at least one arm")
        for k, j in enumerate(self.arms):
            if j.source != self.hub:
                raise ValueError(f"arm {k} does not start at the hub")

    def arm_distances(self) -> np.ndarray:
        """``stack[i]`` is ``d_{X_i}(j_i y, j_i y')`` over hub pairs."""
        m = len(self.hub)
        if not self.arms or m == 0:
            return np.zeros((len(self.arms), m, m))
        return np.stack([j.image_distances() for j in self.arms])


class Pushout(NamedTuple):
    space: MetricSpace
    legs: tuple[PointMap, ...]  # iota_i : X_i -> space
    hub_map: PointMap           # iota = iota_i o j_i, the same for every i
    projection: PointMap        # from the disjoint union


def multiple_pushout(diagram: GlueDiagram, tol: float = DEFAULT_TOL) -> Pushout:
    """Glue the arms' targets along the hub.

    Points of the result are labelled ``"i:label"`` after arm ``i``; an
    identified class keeps its smallest label.
    """
    targets = [j.target for j in diagram.arms]
    union, injections = coproduct(targets)
    pairs = []
    for y in diagram.hub.points:
        first = injections[0][diagram.arms[0](y)]
        for inj, j in zip(injections[1:], diagram.arms[1:]):
            pairs.append((first, inj[j(y)]))
    rel = EquivRelation.from_pairs(union.points, pairs)
    space, proj = quotient(union, rel, tol)
    legs = tuple(PointMap(t, space, {p: proj(inj[p]) for p in t.points})
                 for t, inj in zip(targets, injections))
    hub_maps = [compose(leg, j) for leg, j in zip(legs, diagram.arms)]
    for h in hub_maps[1:]:
        if h.assignment != hub_maps[0].assignment:
            raise AssertionError("pushout square does not commute")
    return Pushout(space, legs, hub_maps[0], proj)


def hub_distance_matrix(diagram: GlueDiagram) -> np.ndarray:
    """Arm-wise minimum ``min_i d_{X_i}(j_i y, j_i y')`` over all hub pairs."""
    stack = diagram.arm_distances()
    return stack.min(axis=0)


def precdx_formula(diagram: GlueDiagram, y: str, y2: str) -> float:
    """Hub-to-hub distance predicted as the cheapest arm."""
    return ext_min(j.target.d(j(y), j(y2)) for j in diagram.arms)


def _arm_point(diagram: GlueDiagram, i: int, x: str) -> tuple[PointMap, int]:
    if not 0 <= i < len(diagram.arms):
        raise IndexError(f"no arm {i}")
    j = diagram.arms[i]
    return j, j.target.index(x)


def dii_formula(diagram: GlueDiagram, i: int, x: str, i2: int, x2: str) -> float:
    """Three-term prediction: into the hub from ``x``, across it, out to ``x2``."""
    j, a = _arm_point(diagram, i, x)
    j2, b = _arm_point(diagram, i2, x2)
    if len(diagram.hub) == 0:
        return INF
    into = j.target.dist[a, j.indices]
    out = j2.target.dist[j2.indices, b]
    total = into[:, None] + hub_distance_matrix(diagram) + out[None, :]
    return float(total.min())


def within_space_distance(diagram: GlueDiagram, i: int, x: str, x2: str) -> float:
    """Distance inside one arm after gluing: direct, or out through the hub and back."""
    j, a = _arm_point(diagram, i, x)
    _, b = _arm_point(diagram, i, x2)
    return min(float(j.target.dist[a, b]), dii_formula(diagram, i, x, i, x2))
