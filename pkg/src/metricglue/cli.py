"""Command line interface: ``metricglue <command> [options]``.

Exit status is 0 when everything succeeded and every check passed, 1 when a
check failed, and 2 for unusable input.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .diagrams import classify, colimit, colimit_expansivity_report, graph_diameter
from .gluing import multiple_pushout, quotient, quotient_semimetric
from .homtensor import DEFAULT_BUDGET, BudgetExceeded, internal_hom
from .io import (FormatError, dumps, glue_diagram_from_json, graph_from_json, hom_to_json,
                 pairs_from_json, pairs_to_json, partition_from_json, read_json,
                 space_diagram_from_json, space_from_json, space_to_json)
from .numerics import DEFAULT_TOL, INF, dist_to_json
from .pathconvex import convex_completion, eps_path_metric, midpoint_defect, missing_segment_pairs
from .proptest import DEFAULT_SEED, SUITES, check_adjunction
from .scenarios import SCENARIOS
from .space import MetricError, MetricSpace, SemiMetricSpace, check_metric, tensor

TEXT_MATRIX_LIMIT = 20


def default_tol() -> float:
    raw = os.environ.get("METRICGLUE_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        print(f"warning: ignoring METRICGLUE_TOL={raw!r}", file=sys.stderr)
        return DEFAULT_TOL


def _load(path: str):
    p = Path(path)
    return read_json(p), p.parent


def _space(path: str, semi: bool = False):
    obj, base = _load(path)
    return space_from_json(obj, base, semi)


def _legs(legs) -> dict:
    return {str(k): dict(f.assignment) for k, f in legs}


# -- commands: each returns (payload, checks_passed, spaces_to_plot) --

def cmd_validate(args):
    obj, _ = _load(args.space)
    if isinstance(obj, dict) and isinstance(obj.get("dist"), list):
        try:
            rows = [[INF if v == "inf" else v for v in row] for row in obj["dist"]]
            matrix = np.array(rows, dtype=float)
        except (TypeError, ValueError) as exc:
            raise FormatError(f"dist is not a numeric matrix: {exc}") from exc
        points = obj.get("points", [])
    else:
        raise FormatError('a space needs "points" and "dist"')
    violations = check_metric(points, matrix, args.tol, semi=args.semi)
    payload = {"valid": not violations,
               "violations": [{"axiom": v.axiom, "points": list(v.points), "detail": v.detail}
                              for v in violations]}
    cls = SemiMetricSpace if args.semi else MetricSpace
    spaces = {} if violations else {"space": cls(points, matrix, args.tol)}
    return payload, not violations, spaces


def cmd_quotient(args):
    x = _space(args.space, semi=args.semi)
    rel = partition_from_json(read_json(args.partition), x.points)
    space, proj = quotient(x, rel, args.tol)
    semi = quotient_semimetric(x, rel)
    payload = {"space": space_to_json(space), "projection": dict(proj.assignment),
               "semimetric": space_to_json(semi)}
    return payload, True, {"quotient": space}


def cmd_pushout(args):
    obj, base = _load(args.diagram)
    diagram = glue_diagram_from_json(obj, base)
    po = multiple_pushout(diagram, args.tol)
    payload = {"space": space_to_json(po.space), "legs": _legs(enumerate(po.legs)),
               "hub_map": dict(po.hub_map.assignment)}
    return payload, True, {"pushout": po.space}


def cmd_colimit(args):
    obj, base = _load(args.diagram)
    diagram = space_diagram_from_json(obj, base, args.tol)
    if args.report:
        rep = colimit_expansivity_report(diagram, args.tol)
        col = rep["colimit"]
        extra = {"diameter": dist_to_json(float(rep["diameter"])),
                 "edge_expansivity": dist_to_json(rep["edge_expansivity"]),
                 "vertex_expansivity": {v: dist_to_json(c) for v, c in rep["vertex_expansivity"].items()}}
    else:
        col = colimit(diagram, args.tol)
        extra = {}
    payload = {"space": space_to_json(col.space), "legs": _legs(col.legs.items()), **extra}
    return payload, True, {"colimit": col.space}


def cmd_classify(args):
    graph = graph_from_json(read_json(args.diagram))
    kind = classify(graph)
    payload = {**kind._asdict(), "diameter": dist_to_json(float(graph_diameter(graph)))}
    return payload, True, {}


def cmd_hom(args):
    x, y = _space(args.source), _space(args.target)
    hom = internal_hom(x, y, args.tol, args.budget)
    payload = hom_to_json(hom)
    spaces = {"hom": hom.base}
    if args.eps is not None:
        core = eps_path_metric(hom.base, args.eps, args.tol)
        payload["coreflection"] = space_to_json(core)
        spaces["coreflection"] = core
    return payload, True, spaces


def cmd_tensor(args):
    t = tensor(_space(args.left), _space(args.right))
    return space_to_json(t), True, {"tensor": t}


def cmd_curry_check(args):
    x, y, z = _space(args.x), _space(args.y), _space(args.z)
    hom = internal_hom(x, y, args.tol, args.budget)
    failures, n = check_adjunction(x, y, z, args.tol, hom)
    payload = {"maps": n, "hom_size": len(hom.base), "passed": not failures, "failures": failures}
    return payload, not failures, {}


def cmd_pathmetric(args):
    x = _space(args.space)
    de = eps_path_metric(x, args.eps, args.tol)
    return space_to_json(de), True, {"pathmetric": de}


def cmd_defect(args):
    x = _space(args.space)
    res = midpoint_defect(x)
    payload = {"maximum": res.maximum,
               "pairs": [{"pair": list(p), "defect": v} for p, v in sorted(res.pairs.items())],
               "missing": pairs_to_json(missing_segment_pairs(x, args.tol))["pairs"]}
    return payload, True, {}


def cmd_convexify(args):
    x = _space(args.space)
    pairs = pairs_from_json(read_json(args.pairs)) if args.pairs else missing_segment_pairs(x, args.tol)
    space, emb = convex_completion(x, pairs, args.step, args.tol)
    defect = midpoint_defect(space).maximum
    payload = {"space": space_to_json(space), "embedding": dict(emb.assignment),
               "pairs": pairs_to_json(pairs)["pairs"], "max_defect": defect}
    return payload, True, {"convexified": space}


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise FormatError(f"expected comma-separated numbers, got {text!r}") from exc


def cmd_scenario(args):
    if args.name == "nstr":
        res = SCENARIOS["nstr"](_floats(args.eps) if args.eps else (0.5, 0.25, 0.125),
                                args.step or 0.0625, args.tol)
    elif args.name == "splice":
        res = SCENARIOS["splice"](args.levels or 5, args.step, args.tol)
    else:
        res = SCENARIOS["hyperbola-orbit"](args.max_n or 6, args.tol)
    return res.to_json(), res.passed, res.spaces


def cmd_proptest(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    print(f"seed: {args.seed}", file=sys.stderr)
    reports = []
    for name in names:
        kwargs = {"seed": args.seed, "tol": args.tol}
        if args.count is not None and name != "adjunction":
            kwargs["count"] = args.count
        reports.append(SUITES[name](**kwargs))
    payload = {"seed": args.seed, "suites": [r.to_json() for r in reports]}
    return payload, all(r.passed for r in reports), {}


# -- output --

def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, float):
        return "inf" if v == INF else f"{v:.6g}"
    return str(v)


def _matrix_text(space: dict, indent: str) -> list[str]:
    pts = space["points"]
    n = len(pts)
    shown = min(n, TEXT_MATRIX_LIMIT)
    cells = [[_fmt(v) for v in row[:shown]] for row in space["dist"][:shown]]
    width = max([len(p) for p in pts[:shown]] + [len(c) for row in cells for c in row] + [1])
    lines = [indent + " " * width + " " + " ".join(p.rjust(width) for p in pts[:shown])]
    for p, row in zip(pts, cells):
        lines.append(indent + p.rjust(width) + " " + " ".join(c.rjust(width) for c in row))
    if n > shown:
        lines.append(f"{indent}... showing {shown} of {n} points (use --format json for all)")
    return lines


def to_text(obj, indent: str = "") -> list[str]:
    if isinstance(obj, dict) and "points" in obj and "dist" in obj:
        lines = _matrix_text(obj, indent)
        rest = {k: v for k, v in obj.items() if k not in ("points", "dist")}
        return lines + to_text(rest, indent) if rest else lines
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{indent}{k}:")
                lines += to_text(v, indent + "  ")
            else:
                lines.append(f"{indent}{k}: {_fmt(v) if not isinstance(v, (dict, list)) else v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{indent}-")
                lines += to_text(v, indent + "  ")
            else:
                lines.append(f"{indent}- {_fmt(v)}")
    else:
        lines.append(indent + _fmt(obj))
    return lines


def _jsonable(obj):
    if isinstance(obj, float) and obj == INF:
        return "inf"
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return _jsonable(obj.item())
    return obj


COMMANDS = {
    "validate": cmd_validate,
    "quotient": cmd_quotient,
    "pushout": cmd_pushout,
    "colimit": cmd_colimit,
    "classify": cmd_classify,
    "hom": cmd_hom,
    "tensor": cmd_tensor,
    "curry-check": cmd_curry_check,
    "pathmetric": cmd_pathmetric,
    "defect": cmd_defect,
    "convexify": cmd_convexify,
    "scenario": cmd_scenario,
    "proptest": cmd_proptest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help="absolute tolerance (default 1e-9, or $METRICGLUE_TOL)")
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for property suites")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help="maximum candidate maps when enumerating homs")
    common.add_argument("--figures", metavar="DIR", default=argparse.SUPPRESS,
                        help="also write distance-matrix heatmaps (PNG) into DIR")

    parser = argparse.ArgumentParser(prog="metricglue", parents=[common],
                                     description="Finite extended metric spaces: gluing, colimits, "
                                                 "path metrics, convex completion, internal homs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    p = add("validate", "check the metric axioms of a space file")
    p.add_argument("--space", required=True)
    p.add_argument("--semi", action="store_true", help="allow distinct points at distance 0")

    p = add("quotient", "glue a space along a partition")
    p.add_argument("--space", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--semi", action="store_true")

    p = add("pushout", "multiple pushout of a glue diagram")
    p.add_argument("--diagram", required=True)

    p = add("colimit", "colimit of a space diagram over a graph")
    p.add_argument("--diagram", required=True)
    p.add_argument("--report", action="store_true", help="include expansivity of canonical maps")

    p = add("classify", "forest/tree/connectivity and diameter of a diagram's graph")
    p.add_argument("--diagram", required=True)

    p = add("hom", "internal hom [X, Y] with the sup metric")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--eps", type=float, help="also emit the eps-path metric of the hom")

    p = add("tensor", "l1 tensor product of two spaces")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    p = add("curry-check", "verify the tensor-hom adjunction on three spaces")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--z", required=True)

    p = add("pathmetric", "eps-path metric of a space")
    p.add_argument("--space", required=True)
    p.add_argument("--eps", type=float, required=True)

    p = add("defect", "midpoint defect of every finite-distance pair")
    p.add_argument("--space", required=True)

    p = add("convexify", "glue sampled segments onto pairs lacking midpoints")
    p.add_argument("--space", required=True)
    p.add_argument("--pairs", help="pair set file (default: pairs with positive defect)")
    p.add_argument("--step", type=float, required=True)

    p = add("scenario", "run a bundled self-checking scenario")
    p.add_argument("name", choices=sorted(SCENARIOS))
    p.add_argument("--eps", help="nstr: comma-separated eps levels")
    p.add_argument("--step", type=float, help="segment sampling step")
    p.add_argument("--levels", type=int, help="splice: number of levels M")
    p.add_argument("--max-n", type=int, dest="max_n", help="hyperbola-orbit: deepest column")

    p = add("proptest", "run a seeded property suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--count", type=int, help="number of random cases")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name, default in (("tol", default_tol()), ("format", "json"), ("seed", DEFAULT_SEED),
                          ("budget", DEFAULT_BUDGET), ("figures", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        payload, ok, spaces = COMMANDS[args.command](args)
    except (FormatError, MetricError, BudgetExceeded, OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = _jsonable(payload)
    if args.figures:
        written = save_figures(spaces, args.figures, args.command)
        if isinstance(payload, dict):
            payload["figures"] = written
    if args.format == "json":
        print(dumps(payload))
    else:
        print("\n".join(to_text(payload)))
    return 0 if ok else 1


def save_figures(spaces, directory, stem):
    from .plotting import save_heatmaps

    return save_heatmaps(spaces, directory, stem)


if __name__ == "__main__":
    sys.exit(main())
