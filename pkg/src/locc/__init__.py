"""Local chordality: r/2-balls, walk-class local covers, cycle spaces and local separators."""

from .chordality import (
    Hole,
    LocalChordality,
    WheelWitness,
    chordality_certificate,
    find_induced_wheel,
    find_short_hole,
    is_chordal,
    is_r_locally_chordal,
)
from .cover import WalkClassCover, truncated_local_cover
from .errors import (
    CoverResourceError,
    EdgeListError,
    Graph6Error,
    LimitExceeded,
    LoccError,
    PreconditionError,
)
from .graph import Graph, ball, emit_graph6, parse_edge_list, parse_graph6

__all__ = [
    "CoverResourceError",
    "EdgeListError",
    "Graph",
    "Graph6Error",
    "Hole",
    "LimitExceeded",
    "LocalChordality",
    "LoccError",
    "PreconditionError",
    "WalkClassCover",
    "WheelWitness",
    "ball",
    "chordality_certificate",
    "emit_graph6",
    "find_induced_wheel",
    "find_short_hole",
    "is_chordal",
    "is_r_locally_chordal",
    "parse_edge_list",
    "parse_graph6",
    "truncated_local_cover",
]
