"""Exact toolkit for finding large subsets of planar points with no three collinear."""
from .geometry import CanonicalLine, OrderType, Point, canonical_line, collinear, order_type, orientation, same_order_type
from .kernel import Instance, KernelResult, KernelTrace, Verdict, kernelize_dual, kernelize_primal, lift_solution
from .lines import LineGroup, collinear_groups, collinearity, conflict_profile, heavy_lines
from .solve import (
    Certificate,
    Solution,
    maximum_general_position,
    min_line_cover,
    solve_auto,
    solve_brute,
    solve_greedy,
    solve_hitting,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalLine", "OrderType", "Point", "canonical_line", "collinear", "order_type", "orientation",
    "same_order_type", "Instance", "KernelResult", "KernelTrace", "Verdict", "kernelize_dual",
    "kernelize_primal", "lift_solution", "LineGroup", "collinear_groups", "collinearity",
    "conflict_profile", "heavy_lines", "Certificate", "Solution", "maximum_general_position",
    "min_line_cover", "solve_auto", "solve_brute", "solve_greedy", "solve_hitting", "verify",
]
