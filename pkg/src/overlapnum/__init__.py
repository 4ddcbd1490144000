"""Overlap numbers of graphs: representations, constructions, certified bounds."""

from .errors import BudgetExceeded, OverlapError, ParseError, PreconditionError, VerificationError
from .graph import Graph, find_star_cutset
from .model import OverlapRep, RepKind, overlap_graph, verify

__all__ = [
    "BudgetExceeded",
    "Graph",
    "OverlapError",
    "OverlapRep",
    "ParseError",
    "PreconditionError",
    "RepKind",
    "VerificationError",
    "find_star_cutset",
    "overlap_graph",
    "verify",
]
