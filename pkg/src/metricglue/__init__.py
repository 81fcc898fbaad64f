"""Finite extended metric spaces with gluing, colimits, path metrics and internal homs."""

from .diagrams import (Colimit, Edge, GraphKind, OrientedGraph, SpaceDiagram, classify, colimit,
                       colimit_expansivity_report, graph_diameter, graph_distance, star_diagram)
from .gluing import (BrokenChainError, EquivRelation, GlueDiagram, Pushout, chain_cost,
                     dii_formula, multiple_pushout, precdx_formula, quotient, quotient_oracle,
                     quotient_semimetric, streamline, within_space_distance)
from .homtensor import BudgetExceeded, HomSpace, curry, hom_coreflection, internal_hom, uncurry
from .morphisms import (PointMap, compose, expansivity_constant, identity, is_c_expansive,
                        is_contraction, is_isometry, lipschitz_constant)
from .numerics import DEFAULT_TOL, INF, shortest_paths
from .pathconvex import (PairSet, convex_completion, eps_path_metric, midpoint_defect,
                         missing_segment_pairs)
from .space import (MetricError, MetricSpace, Segment, SemiMetricSpace, Violation, check_metric,
                    components, coproduct, discrete_space, discretize_segment, singleton, tensor,
                    two_point, validate_metric)

__version__ = "0.1.0"

__all__ = [
    "BrokenChainError", "BudgetExceeded", "Colimit", "DEFAULT_TOL", "Edge", "EquivRelation",
    "GlueDiagram", "GraphKind", "HomSpace", "INF", "MetricError", "MetricSpace", "OrientedGraph",
    "PairSet", "PointMap", "Pushout", "Segment", "SemiMetricSpace", "SpaceDiagram", "Violation",
    "chain_cost", "check_metric", "classify", "colimit", "colimit_expansivity_report", "components",
    "compose", "convex_completion", "coproduct", "curry", "dii_formula", "discrete_space",
    "discretize_segment", "eps_path_metric", "expansivity_constant", "graph_diameter",
    "graph_distance", "hom_coreflection", "identity", "internal_hom", "is_c_expansive",
    "is_contraction", "is_isometry", "lipschitz_constant", "midpoint_defect",
    "missing_segment_pairs", "multiple_pushout", "precdx_formula", "quotient", "quotient_oracle",
    "quotient_semimetric", "shortest_paths", "singleton", "star_diagram", "streamline", "tensor",
    "two_point", "uncurry", "validate_metric", "within_space_distance",
]
