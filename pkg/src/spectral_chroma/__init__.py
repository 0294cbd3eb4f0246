"""Eigenvalue lower bounds for distance-k (quantum and vector) chromatic numbers."""

from .bounds import (BoundError, BoundKind, BoundReport, HypothesisError, classic_kappa_bound,
                     hoffman_bound, hoffman_type_bound, kappa_of, unified_kappa_bound,
                     vector_r_bound)
from .catalog import named_graph
from .graph import Graph, GraphError, power_graph
from .graph6 import Graph6Error, parse_graph6, write_graph6
from .spectra import Polynomial, Spectrum, eigendecompose

__version__ = "0.1.0"

__all__ = [
    "BoundError", "BoundKind", "BoundReport", "Graph", "Graph6Error", "GraphError",
    "HypothesisError", "Polynomial", "Spectrum", "classic_kappa_bound", "eigendecompose",
    "hoffman_bound", "hoffman_type_bound", "kappa_of", "named_graph", "parse_graph6",
    "power_graph", "unified_kappa_bound", "vector_r_bound", "write_graph6",
]
