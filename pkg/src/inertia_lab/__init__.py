"""Exact and numerical inertia of distance-squared matrices of trees and unicyclic graphs."""

from .errors import InertiaLabError
from .exact_linalg import Inertia, RatMatrix, ldlt_inertia
from .graph_core import (
    Graph, GraphStats, IntSymMatrix, all_pairs_distance_squared, build_family,
    enumerate_trees, graph_stats, parse_family,
)
from .numeric_spectra import Spectrum, jacobi_eigenvalues
from .predictors import Prediction, Unsupported, conjecture_bounds, predict_inertia

__version__ = "0.1.0"

__all__ = [
    "InertiaLabError", "Inertia", "RatMatrix", "ldlt_inertia", "Graph", "GraphStats",
    "IntSymMatrix", "all_pairs_distance_squared", "build_family", "enumerate_trees",
    "graph_stats", "parse_family", "Spectrum", "jacobi_eigenvalues", "Prediction",
    "Unsupported", "conjecture_bounds", "predict_inertia",
]
