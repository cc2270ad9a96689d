"""Collatz dynamics, residue transition graphs and range verification."""

from ._core import (
    ClosedLoop,
    ConfigError,
    DomainError,
    LoopError,
    TransitionGraph,
    Variant,
    VerifyReport,
    build_graph,
    class_of,
    classify_trajectory,
    col,
    col_star,
    find_cycle,
    graph_from_json,
    graph_to_json,
    iterate_k,
    loop_power,
    merge_reports,
    preimage,
    strongly_connected_components,
    to_dot,
    total_stopping_time,
    transition_targets,
    validate_loop,
    verify_range,
)

__all__ = [
    "ClosedLoop",
    "ConfigError",
    "DomainError",
    "LoopError",
    "TransitionGraph",
    "Variant",
    "VerifyReport",
    "build_graph",
    "class_of",
    "classify_trajectory",
    "col",
    "col_star",
    "find_cycle",
    "graph_from_json",
    "graph_to_json",
    "iterate_k",
    "loop_power",
    "merge_reports",
    "preimage",
    "strongly_connected_components",
    "to_dot",
    "total_stopping_time",
    "transition_targets",
    "validate_loop",
    "verify_range",
]
