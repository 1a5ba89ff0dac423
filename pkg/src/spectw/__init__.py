"""Spectral lower bounds on treewidth, an exact oracle, and separator certificates."""

from .bounds import BoundReport, bound_cs03, bound_ghnoo24, bound_thm1, bound_thm2, bounds_report
from .certificates import (
    BalancedPartition,
    balanced_separator,
    build_test_vector,
    three_partition,
    triangle_coefficients,
    verify_gu_liu,
    verify_theorem1_chain,
    verify_theorem2_chain,
)
from .exact import TreeDecomposition, closed_form_tw, exact_tw, validate_td
from .graph import Family, Graph, GraphStats, generate, parse_edge_list, parse_family, parse_pace_gr, stats
from .spectrum import SpectrumResult, eigenvalues, lambda2, lambda_max, laplacian, quadratic_form

__version__ = "0.1.0"
