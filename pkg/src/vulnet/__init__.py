"""Vulnerability, power and regularizability of networks."""

from .graph_core import Graph, NodeSet, load_edge_list, read_edge_list
from .vulnerability import Verdict, classify, network_vulnerability

__version__ = "0.1.0"

__all__ = [
    "Graph", "NodeSet", "load_edge_list", "read_edge_list",
    "Verdict", "classify", "network_vulnerability", "__version__",
]
