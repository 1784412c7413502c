"""Weisfeiler-Leman refinement with iteration counting, block decompositions of
logarithmic height, angle-walk vertex identification for 3-connected planar
graphs, and decomposition-based canonisation, together with brute-force
oracles and an experiment harness."""

from .errors import (
    NotStableError,
    ParseError,
    PreconditionError,
    ResourceCapError,
    UsageError,
    ValidationError,
    WlplanarError,
)
from .graph import (
    AtomicType,
    Graph,
    SeparatorQuery,
    atomic_type,
    connected_components,
    is_connected,
    is_k_connected,
    parse_graph,
    separates,
    serialize_graph,
)

__all__ = [
    "AtomicType",
    "Graph",
    "SeparatorQuery",
    "atomic_type",
    "connected_components",
    "is_connected",
    "is_k_connected",
    "parse_graph",
    "separates",
    "serialize_graph",
    "WlplanarError",
    "UsageError",
    "ParseError",
    "ValidationError",
    "PreconditionError",
    "ResourceCapError",
    "NotStableError",
]
