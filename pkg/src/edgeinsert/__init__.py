"""Edge insertion with few crossings into fixed planar embeddings.

Given a connected planar graph with a prescribed rotation system and two
non-adjacent vertices s and t, find a short route for the segment st
through the faces of the drawing (a path in the extended dual) that some
straight-line drawing of the embedding can realize.
"""

from .embedding import (
    DualGraph,
    EmbeddedGraph,
    EmbeddingError,
    Face,
    InputFormatError,
    ValidationReport,
    build_dual,
    extract_faces,
    format_instance,
    max_degree,
    parse_instance,
    validate_embedding,
)
from .extended_dual import DualEdge, DualPath, ExtendedDual, build_extended_dual, crossings_of_path
from .consistency import (
    induced_labeling,
    is_compatible,
    is_consistent,
    non_crossing,
    side_of_edge,
)
from .shortest_paths import ShortestPathDag, bfs_shortest, build_gsp, enumerate_shortest

__all__ = [
    "EmbeddedGraph",
    "Face",
    "DualGraph",
    "EmbeddingError",
    "InputFormatError",
    "ValidationReport",
    "validate_embedding",
    "extract_faces",
    "build_dual",
    "max_degree",
    "parse_instance",
    "format_instance",
    "DualEdge",
    "DualPath",
    "ExtendedDual",
    "build_extended_dual",
    "crossings_of_path",
    "side_of_edge",
    "induced_labeling",
    "is_consistent",
    "is_compatible",
    "non_crossing",
    "ShortestPathDag",
    "bfs_shortest",
    "build_gsp",
    "enumerate_shortest",
]

__version__ = "0.1.0"
