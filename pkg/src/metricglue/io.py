"""JSON readers and writers for spaces, maps, partitions, diagrams and hom spaces.

Wherever a space is expected, a document may hold it inline or name a file
(resolved relative to the referencing document).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .diagrams import Edge, OrientedGraph, SpaceDiagram
from .gluing import EquivRelation, GlueDiagram
from .homtensor import HomSpace
from .morphisms import PointMap
from .numerics import dist_from_json, dist_to_json
from .pathconvex import PairSet
from .space import MetricSpace, SemiMetricSpace


class FormatError(ValueError):
    """Malformed or inconsistent input document."""


def read_json(path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: malformed JSON: {exc}") from exc


def space_to_json(space: SemiMetricSpace) -> dict:
    return {
        "points": list(space.points),
        "dist": [[dist_to_json(float(v)) for v in row] for row in space.dist],
    }


def space_from_json(obj, base: Path | None = None, semi: bool = False) -> SemiMetricSpace:
    if isinstance(obj, str):
        path = (base / obj) if base is not None else Path(obj)
        return space_from_json(read_json(path), path.parent, semi)
    if not isinstance(obj, dict) or "points" not in obj or "dist" not in obj:
        raise FormatError('a space needs "points" and "dist"')
    points = obj["points"]
    rows = obj["dist"]
    if not isinstance(points, list) or not isinstance(rows, list) \
            or any(not isinstance(r, list) or len(r) != len(points) for r in rows) \
            or len(rows) != len(points):
        raise FormatError("dist must be a square matrix matching points")
    try:
        d = np.array([[dist_from_json(v) for v in row] for row in rows], dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from exc
    if not points:
        d = d.reshape(0, 0)
    return (SemiMetricSpace if semi else MetricSpace)(points, d)


def map_to_json(f: PointMap, inline: bool = True) -> dict:
    out = {"map": dict(f.assignment)}
    if inline:
        out = {"source": space_to_json(f.source), "target": space_to_json(f.target), **out}
    return out


def map_from_json(obj, base: Path | None = None, source=None, target=None) -> PointMap:
    if isinstance(obj, str):
        path = (base / obj) if base is not None else Path(obj)
        return map_from_json(read_json(path), path.parent, source, target)
    if not isinstance(obj, dict) or "map" not in obj:
        raise FormatError('a morphism needs a "map" object')
    src = source if source is not None else space_from_json(obj["source"], base)
    tgt = target if target is not None else space_from_json(obj["target"], base)
    assignment = obj["map"]
    if not isinstance(assignment, dict):
        raise FormatError('"map" must be an object from source labels to target labels')
    try:
        return PointMap(src, tgt, assignment)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def partition_to_json(rel: EquivRelation) -> dict:
    return {"blocks": [list(b) for b in rel.blocks]}


def partition_from_json(obj, points) -> EquivRelation:
    if not isinstance(obj, dict) or not isinstance(obj.get("blocks"), list):
        raise FormatError('a partition needs a "blocks" list')
    try:
        return EquivRelation(points, obj["blocks"])
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def glue_diagram_from_json(obj, base: Path | None = None) -> GlueDiagram:
    if not isinstance(obj, dict) or "hub" not in obj or not isinstance(obj.get("arms"), list):
        raise FormatError('a glue diagram needs "hub" and "arms"')
    hub = space_from_json(obj["hub"], base)
    arms = []
    for k, arm in enumerate(obj["arms"]):
        if not isinstance(arm, dict) or "target" not in arm:
            raise FormatError(f'arm {k} needs "target" and "map"')
        arms.append(map_from_json(arm, base, source=hub,
                                  target=space_from_json(arm["target"], base)))
    try:
        return GlueDiagram(hub, arms)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def glue_diagram_to_json(diagram: GlueDiagram) -> dict:
    return {
        "hub": space_to_json(diagram.hub),
        "arms": [{"target": space_to_json(j.target), "map": dict(j.assignment)} for j in diagram.arms],
    }


def graph_from_json(obj) -> OrientedGraph:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise FormatError('a graph needs "vertices"')
    vertices = obj["vertices"]
    names = list(vertices) if isinstance(vertices, (dict, list)) else None
    if names is None:
        raise FormatError('"vertices" must be a list or an object')
    try:
        edges = [Edge(str(e["id"]), e["src"], e["dst"]) for e in obj.get("edges", [])]
        return OrientedGraph(tuple(names), tuple(edges))
    except (KeyError, TypeError) as exc:
        raise FormatError(f'each edge needs "id", "src" and "dst": {exc}') from exc
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def space_diagram_from_json(obj, base: Path | None = None, tol: float = 1e-9) -> SpaceDiagram:
    graph = graph_from_json(obj)
    if not isinstance(obj["vertices"], dict):
        raise FormatError('a space diagram needs "vertices" mapping names to spaces')
    spaces = {v: space_from_json(s, base) for v, s in obj["vertices"].items()}
    maps = {}
    for raw, e in zip(obj.get("edges", []), graph.edges):
        maps[e.id] = map_from_json(raw, base, source=spaces[e.src], target=spaces[e.dst])
    try:
        return SpaceDiagram(graph, spaces, maps, tol)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def space_diagram_to_json(diagram: SpaceDiagram) -> dict:
    return {
        "vertices": {v: space_to_json(s) for v, s in diagram.spaces.items()},
        "edges": [{"id": e.id, "src": e.src, "dst": e.dst, "map": dict(diagram.maps[e.id].assignment)}
                  for e in diagram.graph.edges],
    }


def pairs_from_json(obj) -> PairSet:
    if not isinstance(obj, dict) or not isinstance(obj.get("pairs"), list):
        raise FormatError('a pair set needs a "pairs" list')
    try:
        return PairSet(tuple(p) for p in obj["pairs"])
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from exc


def pairs_to_json(pairs) -> dict:
    return {"pairs": [list(p) for p in PairSet(pairs).sorted()]}


def hom_to_json(hom: HomSpace) -> dict:
    catalog = {label: {p: hom.target.points[i] for p, i in zip(hom.source.points, row.tolist())}
               for label, row in zip(hom.base.points, hom.table)}
    return {**space_to_json(hom.base), "catalog": catalog}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False)
