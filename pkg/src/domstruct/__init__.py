"""Domination structures in graphs: scheme K, cycle labelings, the cubic
cascade, and an exact oracle to check them against."""

from .cycles import InducedCycle, Structure, enumerate_induced_cycles, find_structures
from .formats import parse_graph6, write_graph6
from .graph import Graph, GraphInputError, closed_neighborhood, is_dominating
from .labeling import enumerate_labelings
from .oracle import min_dominating_set_exact
from .pipeline import solve_cubic
from .scheme_k import construct_K
from .verdicts import BudgetExceeded, Verdict

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphInputError",
    "InducedCycle",
    "Structure",
    "BudgetExceeded",
    "Verdict",
    "closed_neighborhood",
    "is_dominating",
    "enumerate_induced_cycles",
    "find_structures",
    "construct_K",
    "enumerate_labelings",
    "min_dominating_set_exact",
    "solve_cubic",
    "parse_graph6",
    "write_graph6",
]
