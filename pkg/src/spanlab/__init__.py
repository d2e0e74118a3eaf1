"""spanlab: additive spanners, emulators, distance preservers, and the
obstacle-product hard instances that stress them, with exact audits.
"""

from .graph import (
    UNREACHABLE, APSP_CAP_DEFAULT, Graph, DistanceVector,
    sssp, apsp, ball, induced_subgraph,
    load_edge_list, save_edge_list, loads_edge_list, dumps_edge_list, to_dot,
)
from .generators import gen_graph
from .distortion import DistortionReport, additive_distortion, multiplicative_spanner
from .clustering import ClusterDecomposition, decompose, verify_decomposition
from .preserver import (
    PathSystem, build_preserver, check_consistency, consistent_shortest_path,
)
from .emulator import Emulator, EmulatorConfig, build_emulator, emulator_greedy_phase
from .spanner import SpannerConfig, SpannerResult, build_spanner, spanner_greedy_phase
from .schedule import ExponentSchedule, exponent_schedule, radius_for, run_recursive
from .convex import (
    ConvexVectorSet, annulus_points, build_convex_set, build_striped_set,
    check_cis_properties, check_strong_convexity, verify_stripes,
)
from .hard_instances import (
    BaseGraph, BaseGraphSpec, ComposedInstance, CriticalPair, Phi,
    build_base_graph, build_inner_graph, build_outer_graph, compose,
    composed_preset, default_phi, inner_preset, inner_vector_set,
    INNER_PRESETS, COMPOSED_PRESETS,
)
from .audit import (
    GraphDistanceCheck, check_base_graph_properties, check_composed_properties,
    check_graph_distance_property, count_shortest_paths,
    deletion_stretch_experiment, parity_filter_candidate, pigeonhole_adversary,
)
from .estimators import (
    AdditiveEmulator, AdditiveSpanner, BallClusterCover, DistancePreserver,
    MultiplicativeSpanner, as_graph,
)
from .report import AuditCheck, AuditReport
from . import errors

__version__ = "0.1.0"

__all__ = [
    "UNREACHABLE", "APSP_CAP_DEFAULT", "Graph", "DistanceVector",
    "sssp", "apsp", "ball", "induced_subgraph",
    "load_edge_list", "save_edge_list", "loads_edge_list", "dumps_edge_list",
    "to_dot", "gen_graph",
    "DistortionReport", "additive_distortion", "multiplicative_spanner",
    "ClusterDecomposition", "decompose", "verify_decomposition",
    "PathSystem", "build_preserver", "check_consistency", "consistent_shortest_path",
    "Emulator", "EmulatorConfig", "build_emulator", "emulator_greedy_phase",
    "SpannerConfig", "SpannerResult", "build_spanner", "spanner_greedy_phase",
    "ExponentSchedule", "exponent_schedule", "radius_for", "run_recursive",
    "ConvexVectorSet", "annulus_points", "build_convex_set", "build_striped_set",
    "check_cis_properties", "check_strong_convexity", "verify_stripes",
    "BaseGraph", "BaseGraphSpec", "ComposedInstance", "CriticalPair", "Phi",
    "build_base_graph", "build_inner_graph", "build_outer_graph", "compose",
    "composed_preset", "default_phi", "inner_preset", "inner_vector_set",
    "INNER_PRESETS", "COMPOSED_PRESETS",
    "GraphDistanceCheck", "check_base_graph_properties",
    "check_composed_properties", "check_graph_distance_property",
    "count_shortest_paths", "deletion_stretch_experiment",
    "parity_filter_candidate", "pigeonhole_adversary",
    "AdditiveEmulator", "AdditiveSpanner", "BallClusterCover",
    "DistancePreserver", "MultiplicativeSpanner", "as_graph",
    "AuditCheck", "AuditReport", "errors",
]
