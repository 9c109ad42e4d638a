"""Exact domination polynomials and checks of their coefficient behaviour."""

from .closed_forms import (kps_polynomial, lollipop_polynomial, path_polynomial,
                           spider_closed_form, tree_polynomial)
from .enumeration import brute_force_polynomial, domination_numbers
from .families import family_graph, parse_family
from .graph import Graph, build_graph
from .polynomial import is_log_concave, unimodality_report

__all__ = [
    "Graph", "build_graph", "family_graph", "parse_family",
    "brute_force_polynomial", "domination_numbers",
    "kps_polynomial", "tree_polynomial", "path_polynomial",
    "spider_closed_form", "lollipop_polynomial",
    "unimodality_report", "is_log_concave",
]
__version__ = "0.1.0"
