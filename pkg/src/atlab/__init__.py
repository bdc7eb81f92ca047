"""Alon-Tarsi orientation certificates, constructive extension lemmas and edge-bound audits."""
from .errors import AtlabError, CapExceeded, Graph6Error, HypothesisError, InvariantViolation
from .graph import Graph, Multigraph, complete_graph, cycle_graph, path_graph, star_graph
from .graph6 import parse_graph6, to_graph6
from .limits import DEFAULT, Limits

__all__ = [
    "AtlabError", "CapExceeded", "Graph6Error", "HypothesisError", "InvariantViolation",
    "Graph", "Multigraph", "complete_graph", "cycle_graph", "path_graph", "star_graph",
    "parse_graph6", "to_graph6", "DEFAULT", "Limits",
]
