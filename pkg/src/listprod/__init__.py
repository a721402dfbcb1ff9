"""Exact list-colouring workbench for Cartesian products M □ K_{a,b}."""
from .coloring import (chromatic_number, chromatic_polynomial_value, count_colorings, find_proper_coloring,
                       is_strongly_chromatic_choosable, list_chromatic_number, list_color_function)
from .extremal import compute_fa, construct_extremal_assignment
from .graphs import Graph, cartesian_product, complete_bipartite, complete_graph, cycle, parse_graph, product_of_complete
from .inequalities import key_inequality_check, optlemma_closed_form, threshold_b, verify_analytic_facts
from .lists import ListAssignment
from .product import FalsificationError, census_X, certify_or_color

__all__ = [
    "Graph", "ListAssignment", "FalsificationError",
    "cartesian_product", "complete_bipartite", "complete_graph", "cycle", "parse_graph", "product_of_complete",
    "chromatic_number", "chromatic_polynomial_value", "count_colorings", "find_proper_coloring",
    "list_chromatic_number", "list_color_function", "is_strongly_chromatic_choosable",
    "census_X", "certify_or_color", "compute_fa", "construct_extremal_assignment",
    "threshold_b", "optlemma_closed_form", "key_inequality_check", "verify_analytic_facts",
]
