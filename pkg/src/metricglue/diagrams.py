"""Oriented graphs and colimits of space-valued diagrams over them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

from ._unionfind import DisjointSet
from .gluing import EquivRelation, GlueDiagram, quotient
from .morphisms import PointMap, compose, expansivity_constant, is_contraction
from .numerics import DEFAULT_TOL, INF
from .space import MetricSpace, SemiMetricSpace, coproduct


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class OrientedGraph:
    """Vertices plus named edges; multi-edges and self-loops are allowed."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(
            e if isinstance(e, Edge) else Edge(*e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        vs = set(self.vertices)
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate edge ids")
        for e in self.edges:
            if e.src not in vs or e.dst not in vs:
                raise ValueError(f"edge {e.id!r} has an undeclared endpoint")

    def neighbours(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            adj[e.src].add(e.dst)
            adj[e.dst].add(e.src)
        return adj


def _bfs(adj: Mapping[str, set[str]], start: str) -> dict[str, int]:
    hops = {start: 0}
    todo = deque([start])
    while todo:
        u = todo.popleft()
        for v in adj[u]:
            if v not in hops:
                hops[v] = hops[u] + 1
                todo.append(v)
    return hops


def graph_distance(g: OrientedGraph, u: str, v: str):
    """Fewest edges on an unoriented path from ``u`` to ``v`` (``INF`` if none)."""
    for w in (u, v):
        if w not in g.vertices:
            raise KeyError(f"unknown vertex {w!r}")
    return _bfs(g.neighbours(), u).get(v, INF)


def graph_diameter(g: OrientedGraph):
    adj = g.neighbours()
    best = 0
    for u in g.vertices:
        hops = _bfs(adj, u)
        if len(hops) < len(g.vertices):
            return INF
        best = max(best, max(hops.values()))
    return best


class GraphKind(NamedTuple):
    connected: bool
    forest: bool
    tree: bool


def classify(g: OrientedGraph) -> GraphKind:
    # an edge inside one component closes an unoriented cycle (loops and parallel edges included)
    ds = DisjointSet(g.vertices)
    # a list, not a generator: every edge must be merged even after a cycle shows up
    forest = all([ds.union(e.src, e.dst) for e in g.edges])
    connected = len(ds.blocks()) <= 1
    return GraphKind(connected, forest, connected and forest)


@dataclass(frozen=True)
class SpaceDiagram:
    """A space at every vertex and a contraction along every edge."""

    graph: OrientedGraph
    spaces: Mapping[str, SemiMetricSpace]
    maps: Mapping[str, PointMap] = field(default_factory=dict)
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        missing = [v for v in self.graph.vertices if v not in self.spaces]
        if missing:
            raise ValueError(f"no space for vertices {missing}")
        for e in self.graph.edges:
            f = self.maps.get(e.id)
            if f is None:
                raise ValueError(f"no map for edge {e.id!r}")
            if f.source != self.spaces[e.src] or f.target != self.spaces[e.dst]:
                raise ValueError(f"map on edge {e.id!r} does not match its endpoint spaces")
            if not is_contraction(f, self.tol):
                raise ValueError(f"map on edge {e.id!r} is not a contraction")


def star_diagram(glue: GlueDiagram, hub: str = "Y") -> SpaceDiagram:
    """The diagram ``hub -> X_i`` of a glue diagram, arm ``i`` at vertex ``"X{i}"``."""
    names = [f"X{i}" for i in range(len(glue.arms))]
    graph = OrientedGraph((hub, *names), [Edge(f"j{i}", hub, v) for i, v in enumerate(names)])
    spaces = {hub: glue.hub, **{v: j.target for v, j in zip(names, glue.arms)}}
    return SpaceDiagram(graph, spaces, {f"j{i}": j for i, j in enumerate(glue.arms)})


class Colimit(NamedTuple):
    space: MetricSpace
    legs: dict[str, PointMap]  # vertex -> canonical map into the colimit


def colimit(diagram: SpaceDiagram, tol: float = DEFAULT_TOL) -> Colimit:
    """Disjoint union of the vertex spaces glued along every ``x ~ F(e)(x)``.

    Points are labelled ``"vertex:label"``.
    """
    g = diagram.graph
    union, injections = coproduct([diagram.spaces[v] for v in g.vertices], tags=g.vertices)
    inj = dict(zip(g.vertices, injections))
    pairs = [(inj[e.src][x], inj[e.dst][fx])
             for e in g.edges for x, fx in diagram.maps[e.id].assignment.items()]
    rel = EquivRelation.from_pairs(union.points, pairs)
    space, proj = quotient(union, rel, tol)
    legs = {v: PointMap(diagram.spaces[v], space, {p: proj(inj[v][p]) for p in diagram.spaces[v].points})
            for v in g.vertices}
    for e in g.edges:
        if compose(legs[e.dst], diagram.maps[e.id]).assignment != legs[e.src].assignment:
            raise AssertionError(f"colimit cocone does not commute on edge {e.id!r}")
    return Colimit(space, legs)


def colimit_expansivity_report(diagram: SpaceDiagram, tol: float = DEFAULT_TOL) -> dict:
    """Expansivity of every canonical map, next to the graph diameter and the weakest edge."""
    col = colimit(diagram, tol)
    edge_c = min((expansivity_constant(diagram.maps[e.id]) for e in diagram.graph.edges),
                 default=INF)
    return {
        "diameter": graph_diameter(diagram.graph),
        "edge_expansivity": edge_c,
        "vertex_expansivity": {v: expansivity_constant(f) for v, f in col.legs.items()},
        "colimit": col,
    }
