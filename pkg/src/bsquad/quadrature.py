"""Positive quadrature rules for rational functions with prescribed poles.

A rule built on a composite configuration integrates

    R(xi) = f(cos xi) / prod_r (1 + 2 alpha_r cos xi + alpha_r^2)

against the Chebyshev weight rho of the untilded family, exactly whenever
``deg f <= D = 2 (m - d~_eps~) - 1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import chebyshev as C

from .basis import dual_weights
from .functions import chebyshev_rho, denominator, u_weight
from .nodes import DEFAULT_TOL, solve_grid
from .params import BSFamily, CompositeConfig


class Kind(str, enum.Enum):
    GAUSS = "gauss"
    RADAU_LEFT = "radau_left"
    RADAU_RIGHT = "radau_right"
    LOBATTO = "lobatto"
    INTERIOR = "interior"


@dataclass(frozen=True)
class QuadratureRule:
    config: CompositeConfig
    nodes: np.ndarray
    weights: np.ndarray
    rho_at_nodes: np.ndarray
    exactness_degree: int
    kind: Kind

    @property
    def pole_family(self) -> BSFamily:
        return self.config.fam


@dataclass(frozen=True)
class RationalIntegrand:
    """Numerator in Chebyshev-T form (in ``cos xi``) over the family's pole factors."""

    f_coeffs: np.ndarray
    pole_family: BSFamily

    @classmethod
    def from_power(cls, power_coeffs, pole_family: BSFamily) -> "RationalIntegrand":
        """Numerator given as ``sum_k c_k cos(xi)^k``."""
        return cls(C.poly2cheb(np.asarray(power_coeffs, dtype=float)), pole_family)

    @property
    def degree(self) -> int:
        coeffs = np.trim_zeros(np.asarray(self.f_coeffs, dtype=float), "b")
        return max(len(coeffs) - 1, 0)

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        return C.chebval(np.cos(xi), self.f_coeffs) / denominator(self.pole_family, xi)


def exactness_degree(config: CompositeConfig) -> int:
    return int(2 * (config.m - config.fam_t.d_eps)) - 1


def classify(config: CompositeConfig) -> Kind:
    if config.left_endpoint and config.right_endpoint:
        return Kind.LOBATTO
    if config.left_endpoint:
        return Kind.RADAU_LEFT
    if config.right_endpoint:
        return Kind.RADAU_RIGHT
    if config.fam_t.d_eps == -1:
        return Kind.GAUSS
    return Kind.INTERIOR


def build_rule(config: CompositeConfig, tol: float = DEFAULT_TOL) -> QuadratureRule:
    grid = solve_grid(config, tol)
    fam = config.fam
    return QuadratureRule(
        config=config,
        nodes=grid.xi,
        weights=dual_weights(config, grid),
        rho_at_nodes=chebyshev_rho(fam.eps_plus, fam.eps_minus, grid.xi),
        exactness_degree=exactness_degree(config),
        kind=classify(config),
    )


def reciprocal_denominator(fam: BSFamily, xi):
    """``1 / prod (1 + 2 a cos xi + a^2)`` as ``prod u_a(xi) / (1 - a^2)``."""
    xi = np.asarray(xi, dtype=float)
    out = np.ones_like(xi, dtype=complex)
    for a in fam.alpha:
        out = out * u_weight(a, xi) / (1.0 - complex(a) ** 2)
    return out.real


def integrate_function(rule: QuadratureRule, f) -> float:
    """Apply the rule to ``f(xi) / denominator``; ``f`` is a callable of the angle."""
    vals = np.asarray(f(rule.nodes), dtype=float) * reciprocal_denominator(rule.pole_family, rule.nodes)
    return float(np.sum(vals * rule.rho_at_nodes * rule.weights))


def integrate_rational(rule: QuadratureRule, integrand: RationalIntegrand) -> float:
    """Rule value of ``(1 / 2 pi) int_0^pi R(xi) rho(xi) d xi``.

    Exact when ``integrand.degree <= rule.exactness_degree``; see
    :func:`is_exact`.
    """
    if integrand.pole_family != rule.pole_family:
        raise ValueError("integrand pole family differs from the rule's untilded family")
    coeffs = np.asarray(integrand.f_coeffs, dtype=float)
    return integrate_function(rule, lambda x: C.chebval(np.cos(x), coeffs))


def is_exact(rule: QuadratureRule, integrand: RationalIntegrand) -> bool:
    return integrand.degree <= rule.exactness_degree


def reference_value(rule: QuadratureRule, integrand: RationalIntegrand, tol: float = 1e-13) -> float:
    """Adaptive-quadrature value of the same integral (independent of the rule)."""
    from .oracle import reference_integral

    fam = rule.pole_family
    rep = reference_integral(
        lambda x: integrand(x) * chebyshev_rho(fam.eps_plus, fam.eps_minus, x) / (2.0 * np.pi), tol
    )
    return rep.value


@dataclass
class SweepReport:
    exactness_degree: int
    errors: dict[int, float] = field(default_factory=dict)
    sharpness_error: float = float("nan")

    @property
    def max_exact_error(self) -> float:
        return max((e for d, e in self.errors.items() if d <= self.exactness_degree), default=0.0)


def relative_error(value: float, reference: float) -> float:
    return abs(value - reference) / max(1.0, abs(reference))


def exactness_sweep(rule: QuadratureRule, trials: int = 1, seed: int = 0) -> SweepReport:
    """Random numerators of every degree ``0..D`` plus ``T_{D+1}``.

    ``errors[deg]`` is the worst relative error over ``trials`` random
    Chebyshev-T numerators of exact degree ``deg``.  ``sharpness_error`` is
    the error for ``f = T_{D+1}(cos xi) = cos((D + 1) xi)``.
    """
    rng = np.random.default_rng(seed)
    dmax = rule.exactness_degree
    report = SweepReport(dmax)
    for deg in range(dmax + 1):
        worst = 0.0
        for _ in range(trials):
            coeffs = rng.standard_normal(deg + 1)
            coeffs[-1] = np.sign(coeffs[-1]) * (abs(coeffs[-1]) + 0.5)
            f = RationalIntegrand(coeffs, rule.pole_family)
            worst = max(worst, relative_error(integrate_rational(rule, f), reference_value(rule, f)))
        report.errors[deg] = worst
    top = RationalIntegrand(np.eye(dmax + 2)[dmax + 1], rule.pole_family)
    report.sharpness_error = relative_error(integrate_rational(rule, top), reference_value(rule, top))
    return report
