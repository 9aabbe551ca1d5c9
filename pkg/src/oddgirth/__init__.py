"""Spectral bipartiteness of graphs: (lambda_1 + lambda_n)/n against odd girth."""

from oddgirth.errors import (
    CapacityExceeded,
    Graph6Error,
    InternalConsistencyError,
    InvalidParameter,
    NotApplicable,
    NumericalDomainError,
)
from oddgirth.graph import (
    INFINITE,
    Graph,
    OddGirth,
    connected_components,
    d2_oracle,
    generate_cayley_f2,
    generate_complete,
    generate_cycle,
    generate_folded_cube,
    generate_hypercube,
    is_independent_set,
    odd_girth,
)
from oddgirth.graph6 import parse_graph6, read_graph6_lines, write_graph6

__version__ = "0.1.0"

__all__ = [
    "CapacityExceeded",
    "Graph",
    "Graph6Error",
    "INFINITE",
    "InternalConsistencyError",
    "InvalidParameter",
    "NotApplicable",
    "NumericalDomainError",
    "OddGirth",
    "connected_components",
    "d2_oracle",
    "generate_cayley_f2",
    "generate_complete",
    "generate_cycle",
    "generate_folded_cube",
    "generate_hypercube",
    "is_independent_set",
    "odd_girth",
    "parse_graph6",
    "read_graph6_lines",
    "write_graph6",
]
