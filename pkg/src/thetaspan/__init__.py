"""Theta-graphs: construction, spanning and routing ratios, bounds and lower-bound gadgets."""
from .bounds import (
    bounds_record,
    check_trig_inequalities,
    classify,
    lb_span,
    legacy_rs,
    pair_bound,
    ub_route,
    ub_span,
    verify_partial_order,
)
from .errors import (
    DegenerateInputError,
    DisconnectedError,
    DomainError,
    FamilyError,
    GadgetError,
    GeneralPositionError,
    HypothesisViolation,
    ParseError,
    ThetaSpanError,
)
from .geometry import (
    CanonicalTriangle,
    ConeSystem,
    Point,
    boundary_parallel_check,
    calculation_constant,
    canonical_triangle,
    cone_of,
    four_points_inequality,
    projection_distance,
    validate_general_position,
)
from .graph import ThetaGraph, build_theta_graph, undirected_adjacency
from .metrics import pair_bound_check, shortest_path, spanning_ratio
from .routing import RouteResult, routing_ratio, theta_route
from .adversarial import (
    gen_route_4k4,
    gen_route_theta10,
    gen_span_4k2,
    gen_span_4k3,
    gen_span_4k4,
    gen_span_4k5,
)

__version__ = "0.1.0"
