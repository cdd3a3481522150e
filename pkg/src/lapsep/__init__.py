"""Exact separability tests and counts for graph Laplacians as density matrices."""

from .criteria import Certificate, Kind, Verdict, classify
from .graph_core import LabeledGraph, SymIntMatrix, enumerate_graphs, graph_from_edges, laplacian
from .tensor_ops import FactorShape, partial_transpose

__all__ = [
    "Certificate",
    "FactorShape",
    "Kind",
    "LabeledGraph",
    "SymIntMatrix",
    "Verdict",
    "classify",
    "enumerate_graphs",
    "graph_from_edges",
    "laplacian",
    "partial_transpose",
]
