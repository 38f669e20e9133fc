"""Exact FPT solvers for Cograph Deletion and Cograph Editing."""

from .catalog import branching_number, fmin, minimal_deletion_sets, minimal_editing_sets, whole_catalog
from .graph import Graph, Mode, apply_modification, complement, induced_subgraph, make_graph
from .p4 import find_induced_p4, is_cograph
from .search import SolveResult, brute_force_min, solve, solve_min, verify_certificate

__all__ = [
    "Graph",
    "Mode",
    "SolveResult",
    "apply_modification",
    "branching_number",
    "brute_force_min",
    "complement",
    "find_induced_p4",
    "fmin",
    "induced_subgraph",
    "is_cograph",
    "make_graph",
    "minimal_deletion_sets",
    "minimal_editing_sets",
    "solve",
    "solve_min",
    "verify_certificate",
    "whole_catalog",
]
