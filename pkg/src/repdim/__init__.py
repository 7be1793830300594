"""Minimal two-distance Euclidean representations of graphs."""

from .embed import (
    DistanceMatrixReport,
    Embedding,
    boundary_b_bisection,
    build_distance_matrix,
    gower_test,
    minimal_embedding,
    realize,
    schoenberg_test,
)
from .errors import (
    GraphParseError,
    InapplicableError,
    InconsistencyError,
    NotEDMError,
    NumericError,
    RepdimError,
)
from .formats import encode_graph6, parse_edge_list, parse_graph6
from .graph import Graph, complement
from .oracle import brute_force_rep, verify_embedding
from .repnum import RepResult, representation_number, representation_number_regular, srg_rep
from .spectral import DEFAULT_TOLERANCES, SpectrumSummary, ToleranceConfig, summarize

__version__ = "0.1.0"
