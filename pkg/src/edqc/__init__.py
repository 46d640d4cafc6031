"""Quasi-clique discovery by stochastic energy diffusion."""

from .density import ExactGamma, SubsetDensityTracker, count_internal_edges, density
from .diffusion import (DiffusionParams, EnergyMap, active_set, diffusion_round,
                        energy_diffusion)
from .driver import QuasiCliqueResult, RunConfig, RunSummary, edqc, run_many, source_order
from .extraction import ExtractionResult, extract_quasi_clique, spectral_breakpoint
from .graph import Graph, GraphError, ParseError, build_graph, load_edge_list, read_graph
from .oracle import is_quasi_clique, max_quasi_clique_bruteforce

__all__ = [
    "DiffusionParams", "EnergyMap", "ExactGamma", "ExtractionResult", "Graph", "GraphError",
    "ParseError", "QuasiCliqueResult", "RunConfig", "RunSummary", "SubsetDensityTracker",
    "active_set", "build_graph", "count_internal_edges", "density", "diffusion_round",
    "edqc", "energy_diffusion", "extract_quasi_clique", "is_quasi_clique",
    "load_edge_list", "max_quasi_clique_bruteforce", "read_graph", "run_many",
    "source_order", "spectral_breakpoint",
]
