"""Exact classic, total and L-Grundy domination numbers, constructions and checks."""

from .engine import CLASSIC, L, TOTAL, Variant, validate_sequence
from .graph import Graph, graph_from_edges, parse_graph6, to_graph6
from .solver import SolveOptions, SolveResult, brute_oracle, greedy_bound, solve, upper_bound

__all__ = [
    "CLASSIC",
    "L",
    "TOTAL",
    "Variant",
    "Graph",
    "SolveOptions",
    "SolveResult",
    "brute_oracle",
    "graph_from_edges",
    "greedy_bound",
    "parse_graph6",
    "solve",
    "to_graph6",
    "upper_bound",
    "validate_sequence",
]
__version__ = "0.1.0"
