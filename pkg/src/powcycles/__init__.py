"""Cycle counts in repeated-exponentiation graphs modulo p**n."""

from .census import Census, closed_walk_trace, closed_walk_trace_all, periodic_points, reduced_trace
from .graph import ExpGraph, PerturbParams, build_graph, build_perturbed_graph, extract_blocks
from .ntheory import GraphParams, ParameterError, multiplicative_order
from .report import VerificationReport

__all__ = [
    "Census",
    "ExpGraph",
    "GraphParams",
    "ParameterError",
    "PerturbParams",
    "VerificationReport",
    "build_graph",
    "build_perturbed_graph",
    "closed_walk_trace",
    "closed_walk_trace_all",
    "extract_blocks",
    "multiplicative_order",
    "periodic_points",
    "reduced_trace",
]
