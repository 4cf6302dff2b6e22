"""Nodes of the composite grid.

Node ``l`` solves ``Phi(xi) = pi (2 l + eps_minus + eps~_minus)``, where

    Phi(xi) = 2 (m - d_eps - d~_eps~) xi + sum_r F_{alpha_r}(xi) + sum_r F_{alpha~_r}(xi)

is smooth and strictly increasing on [0, pi].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .functions import antiderivative_sum, u_sum
from .params import CompositeConfig

DEFAULT_TOL = 1e-13
MAX_ITER = 100


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, bracket: tuple[float, float]):
        super().__init__(f"{message} (last bracket [{bracket[0]!r}, {bracket[1]!r}])")
        self.bracket = bracket


@dataclass(frozen=True)
class NodeBounds:
    kappa_plus: float
    kappa_minus: float
    lo: np.ndarray
    hi: np.ndarray


@dataclass(frozen=True)
class NodeGrid:
    config: CompositeConfig
    xi: np.ndarray
    residual: np.ndarray
    brackets: np.ndarray  # shape (m + 1, 2)


def lhs_phi(config: CompositeConfig, xi):
    xi = np.asarray(xi, dtype=float)
    return 2.0 * float(config.reduced_m) * xi + antiderivative_sum(config.alphas, xi)


def lhs_phi_prime(config: CompositeConfig, xi):
    xi = np.asarray(xi, dtype=float)
    return 2.0 * float(config.reduced_m) + u_sum(config.alphas, xi)


def node_target(config: CompositeConfig, l_hat: int) -> float:
    return math.pi * (2 * l_hat + config.fam.eps_minus + config.fam_t.eps_minus)


def _kappa(alphas, sign: int) -> float:
    return 0.5 * sum(((1 - abs(a)) / (1 + abs(a))) ** sign for a in alphas)


def node_bounds(config: CompositeConfig) -> NodeBounds:
    """Brackets from the mean value theorem and the bounds on Re u_alpha."""
    kp = _kappa(config.fam.alpha, 1) + _kappa(config.fam_t.alpha, 1)
    km = _kappa(config.fam.alpha, -1) + _kappa(config.fam_t.alpha, -1)
    shift = 0.5 * (config.fam.eps_minus + config.fam_t.eps_minus)
    l_hat = np.arange(config.m + 1)
    mr = float(config.reduced_m)
    lo = np.pi * (l_hat + shift) / (mr + km)
    hi = np.minimum(np.pi * (l_hat + shift) / (mr + kp), np.pi)
    return NodeBounds(kp, km, lo, hi)


def initial_node(config: CompositeConfig, l_hat: int) -> float:
    """Node position at vanishing alphas; lies inside the node_bounds bracket."""
    e = (config.fam.eps_plus, config.fam.eps_minus, config.fam_t.eps_plus, config.fam_t.eps_minus)
    return math.pi * (2 * l_hat + e[1] + e[3]) / (2 * config.m + sum(e))


def solve_node(config: CompositeConfig, l_hat: int, tol: float = DEFAULT_TOL,
               bounds: NodeBounds | None = None, max_iter: int = MAX_ITER) -> float:
    """Safeguarded Newton iteration for a single node.

    Iterates stay inside the certified bracket; a Newton step that leaves it
    is replaced by bisection.  Stops once the Newton correction (residual over
    ``Phi'``) drops below ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not 0 <= l_hat <= config.m:
        raise ValueError(f"l_hat must lie in [0, {config.m}]")
    if l_hat == 0 and config.left_endpoint:
        return 0.0
    if l_hat == config.m and config.right_endpoint:
        return math.pi
    if bounds is None:
        bounds = node_bounds(config)
    lo, hi = float(bounds.lo[l_hat]), float(bounds.hi[l_hat])
    target = node_target(config, l_hat)
    x = min(max(initial_node(config, l_hat), lo), hi)
    for _ in range(max_iter):
        f = float(lhs_phi(config, x)) - target
        fp = float(lhs_phi_prime(config, x))
        step = f / fp
        if abs(step) < tol or f == 0.0:
            return x
        if f > 0:
            hi = x
        else:
            lo = x
        x_new = x - step
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if x_new == x:
            return x
        x = x_new
    raise ConvergenceError(f"node {l_hat} did not converge in {max_iter} iterations", (lo, hi))


def solve_grid(config: CompositeConfig, tol: float = DEFAULT_TOL) -> NodeGrid:
    bounds = node_bounds(config)
    xi = np.array([solve_node(config, l, tol, bounds) for l in range(config.m + 1)])
    targets = np.array([node_target(config, l) for l in range(config.m + 1)])
    residual = lhs_phi(config, xi) - targets
    grid = NodeGrid(config, xi, residual, np.column_stack([bounds.lo, bounds.hi]))
    if np.any(np.diff(xi) <= 0):
        raise ConvergenceError("solved nodes are not strictly increasing", (float(xi[0]), float(xi[-1])))
    assert (xi[0] == 0.0) == config.left_endpoint
    assert (xi[-1] == math.pi) == config.right_endpoint
    return grid


def check_bounds(grid: NodeGrid, bounds: NodeBounds | None = None, slack: float = 4e-15) -> bool:
    """Bracket inequalities for every node and gap inequalities for every pair.

    ``slack`` absorbs rounding where the bounds are attained exactly
    (all alphas absent).
    """
    config = grid.config
    if bounds is None:
        bounds = node_bounds(config)
    xi = grid.xi
    ok = bool(np.all(bounds.lo - slack <= xi) and np.all(xi <= bounds.hi + slack))
    mr = float(config.reduced_m)
    gaps = xi[None, :] - xi[:, None]
    steps = np.arange(config.m + 1)
    dk = steps[None, :] - steps[:, None]
    upper = np.triu(np.ones_like(gaps, dtype=bool), 1)
    lo_gap = np.pi * dk / (mr + bounds.kappa_minus)
    hi_gap = np.pi * dk / (mr + bounds.kappa_plus)
    ok &= bool(np.all((lo_gap - slack <= gaps)[upper]) and np.all((gaps <= hi_gap + slack)[upper]))
    return ok


def verify_phase_condition(config: CompositeConfig, xi) -> np.ndarray:
    """Residual of the exponentiated node equation at ``xi``.

    ``|e^{2imxi} - (-1)^{eps- + eps~-} e^{2i(d_eps + d~_eps~) xi} prod (1 + a e^{ixi}) / (e^{ixi} + a)|``
    """
    xi = np.asarray(xi, dtype=float)
    z = np.exp(1j * xi)
    sign = (-1) ** (config.fam.eps_minus + config.fam_t.eps_minus)
    rhs = sign * np.exp(1j * float(2 * config.d_sum) * xi)
    for a in config.alphas:
        rhs = rhs * (1.0 + a * z) / (z + a)
    return np.abs(np.exp(2j * config.m * xi) - rhs)
