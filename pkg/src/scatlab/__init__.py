"""Exact scattering diagrams and cluster scattering fans."""

from .autos import Automorphism, WallCrossing
from .cluster_oracle import ClusterOracle, cluster_oracle
from .completion import cluster_scatter_rank2, wall_census
from .cones import Cone
from .diagram import (PiecewisePath, ScatteringDiagram, Wall, check_consistency, equivalent,
                      f_general_point, make_generic_path, make_wall, minimal_support,
                      path_ordered_product)
from .errors import ScatError
from .fans import Fan, check_refinement, in_b_cone, is_fan, mutation_fan, scat_fan
from .lattice import (A2, A3, B2, G2, KRONECKER2, MARKOV, ExchangeMatrix, InitialData, eta,
                      mutate_matrix)
from .series import LaurentElement, LaurentPolynomial, TruncatedSeries, WallFunction
from .theta import BrokenLine, ThetaFunction, broken_lines, clear_frozen, theta_broken, theta_pop
from .transport import apply_M_k, chamber_fan, cluster_subdiagram, verify_mutation_equiv

__all__ = [
    "A2", "A3", "B2", "G2", "KRONECKER2", "MARKOV",
    "Automorphism", "BrokenLine", "ClusterOracle", "Cone", "ExchangeMatrix", "Fan", "InitialData",
    "LaurentElement", "LaurentPolynomial", "PiecewisePath", "ScatError", "ScatteringDiagram",
    "ThetaFunction", "TruncatedSeries", "Wall", "WallCrossing", "WallFunction",
    "apply_M_k", "broken_lines", "chamber_fan", "check_consistency", "check_refinement",
    "clear_frozen", "cluster_oracle", "cluster_scatter_rank2", "cluster_subdiagram", "equivalent",
    "eta", "f_general_point", "in_b_cone", "is_fan", "make_generic_path", "make_wall",
    "minimal_support", "mutate_matrix", "mutation_fan", "path_ordered_product", "scat_fan",
    "theta_broken", "theta_pop", "verify_mutation_equiv", "wall_census",
]
