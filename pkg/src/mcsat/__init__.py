"""Branch-and-reduce SAT solver with a measure-and-conquer audit toolkit."""

from .formula import (Formula, ParseError, ContradictionError, StructureError,
                      parse_dimacs, emit_dimacs, assign, neighbor_stats,
                      incidence_graph, has_matching_size_2, degree_zero_vertices)
from .measure import (WeightTable, default_weights, mu, branching_factor,
                      covers, catalog, optimize_weights)

__all__ = [
    "Formula", "ParseError", "ContradictionError", "StructureError",
    "parse_dimacs", "emit_dimacs", "assign", "neighbor_stats",
    "incidence_graph", "has_matching_size_2", "degree_zero_vertices",
    "WeightTable", "default_weights", "mu", "branching_factor", "covers",
    "catalog", "optimize_weights",
]
