"""Closeness and shared-ancestry measures on directed acyclic graphs.

The package has three layers: the Polytree data structure with CSV/JSON
serialization, the measurement engine (shortest-path distances, power-mean
closeness, horizontal overlap), and an acquisition pipeline that builds
lineage graphs from an academic-genealogy website. A brute-force oracle
module backs the test suite and the ``polyprox verify`` subcommand.
"""

from .acquisition import (
    DirectorySource,
    FetchConfig,
    HttpSource,
    PersonRecord,
    RateLimiter,
    build_ancestor_tree,
    build_descendant_tree,
    fetch_person,
    parse_person_page,
)
from .centrality import (
    CentralityScore,
    harmonic_centrality,
    harmonic_nobelity,
    holder_centrality,
    holder_mean,
    holder_nobelity,
)
from .cross import HorizontalMatrix, cross_closeness, cross_distance, horizontal_distance
from .distances import distances_from, distances_to, level_set
from .errors import (
    CycleError,
    DuplicateIdError,
    EmptyGraphError,
    EmptyInputError,
    EmptyMaskError,
    InvalidDegreeError,
    NetworkError,
    NotFoundError,
    ParseError,
    PolyproxError,
    SelfLoopError,
    TooLargeError,
    UnknownNodeError,
    ValidationError,
    ZeroExponentError,
)
from .graph import Person, Polytree, merge
from .graphio import load_graph, load_mask, save_graph

__version__ = "0.1.0"

__all__ = [
    "CentralityScore",
    "CycleError",
    "DirectorySource",
    "DuplicateIdError",
    "EmptyGraphError",
    "EmptyInputError",
    "EmptyMaskError",
    "FetchConfig",
    "HorizontalMatrix",
    "HttpSource",
    "InvalidDegreeError",
    "NetworkError",
    "NotFoundError",
    "ParseError",
    "Person",
    "PersonRecord",
    "Polytree",
    "PolyproxError",
    "RateLimiter",
    "SelfLoopError",
    "TooLargeError",
    "UnknownNodeError",
    "ValidationError",
    "ZeroExponentError",
    "build_ancestor_tree",
    "build_descendant_tree",
    "cross_closeness",
    "cross_distance",
    "distances_from",
    "distances_to",
    "fetch_person",
    "harmonic_centrality",
    "harmonic_nobelity",
    "holder_centrality",
    "holder_mean",
    "holder_nobelity",
    "horizontal_distance",
    "level_set",
    "load_graph",
    "load_mask",
    "merge",
    "parse_person_page",
    "save_graph",
    "__version__",
]
