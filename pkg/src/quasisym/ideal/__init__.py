"""Exact algebra of the quasisymmetry models: graphs, cycle polynomials and monomial ideals."""
from .components import MonomialDecomposition, monomial_ideal_components
from .cycles import (
    OrientedCycle,
    coeff_formula,
    cycle_generators,
    cycle_polynomial,
    leading_orientation,
    markov_basis,
    markov_binomial,
    membership_residual,
    orientations,
)
from .graph import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    canonical_cycle,
    enumerate_cycles,
    format_graph,
    load_graph,
    matrix_tree_count,
    parse_graph,
    spanning_trees,
)
from .oracle import OracleError, cycle_polynomial_oracle
from .poly import Poly, TPoly
from .qsi import qsi1_quadrics

__all__ = [
    "DisconnectedGraphError",
    "Graph",
    "GraphError",
    "MonomialDecomposition",
    "OracleError",
    "OrientedCycle",
    "Poly",
    "TPoly",
    "canonical_cycle",
    "coeff_formula",
    "cycle_generators",
    "cycle_polynomial",
    "cycle_polynomial_oracle",
    "enumerate_cycles",
    "format_graph",
    "leading_orientation",
    "load_graph",
    "markov_basis",
    "markov_binomial",
    "matrix_tree_count",
    "membership_residual",
    "monomial_ideal_components",
    "orientations",
    "parse_graph",
    "qsi1_quadrics",
    "spanning_trees",
]
