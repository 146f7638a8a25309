"""Equitable tree-colorings of degenerate graphs."""
from .estimator import EquitableTreeColoring
from .graph import Graph, degeneracy_ordering, parse_edge_list, write_edge_list
from .plan import PARAMETER_TABLE, Branch, base3_decompose, select_params
from .solve import SolveResult, solve
from .verify import VerifyReport, rebalance_strict, verify

__all__ = [
    "EquitableTreeColoring",
    "Graph",
    "degeneracy_ordering",
    "parse_edge_list",
    "write_edge_list",
    "PARAMETER_TABLE",
    "Branch",
    "base3_decompose",
    "select_params",
    "SolveResult",
    "solve",
    "VerifyReport",
    "rebalance_strict",
    "verify",
]

__version__ = "0.1.0"
