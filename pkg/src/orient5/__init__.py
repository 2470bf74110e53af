"""Orientation numbers of vertex-multiplications of diameter-5 trees."""

__version__ = "0.1.0"

from .classifier import Classification, check_known_criteria, classify
from .constructions import (
    Certificate,
    SchemeResult,
    certify_c0,
    lift,
    orient_branch_four,
    orient_centre_three,
    orient_single_nonleaf,
    search_c1_witness,
)
from .graph import INF, Diam5Profile, Graph, ParentTree, a_set, load_tree, profile_diam5
from .multiplication import CloneVertex, MultiGraph, multiply
from .oracle import Filter, OracleResult, SearchConfig, exists_diameter_at_most, orientation_number
from .orientation import Orientation, check_branch_splits, digraph_diameter, reverse, shortest_cycle_through

__all__ = [
    "INF", "Certificate", "Classification", "CloneVertex", "Diam5Profile", "Filter", "Graph",
    "MultiGraph", "OracleResult", "Orientation", "ParentTree", "SchemeResult", "SearchConfig",
    "a_set", "certify_c0", "check_branch_splits", "check_known_criteria", "classify",
    "digraph_diameter", "exists_diameter_at_most", "lift", "load_tree", "multiply",
    "orient_branch_four", "orient_centre_three", "orient_single_nonleaf", "orientation_number",
    "profile_diam5", "reverse", "search_c1_witness", "shortest_cycle_through",
]
