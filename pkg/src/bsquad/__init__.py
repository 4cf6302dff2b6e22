"""Composite Bernstein-Szegő quadrature rules for rational integrands with
prescribed poles against Chebyshev weights."""

from .basis import CompositeBasis, build_basis, cd_sum, dual_weights, gram_residuals, primal_weights, psi
from .gram import PolynomialFamily, fourier_moments, gram_schmidt_low, recurrence_coeffs
from .jacobi import JacobiOperator, build_J, build_L, charpoly_eval, elementary_symmetric
from .nodes import NodeBounds, NodeGrid, lhs_phi, node_bounds, solve_grid, solve_node
from .params import BSFamily, CompositeConfig, ParameterError, make_config, validate_family, validate_pair
from .quadrature import (Kind, QuadratureRule, RationalIntegrand, build_rule, classify, exactness_degree,
                         integrate_rational)

__version__ = "0.1.0"
