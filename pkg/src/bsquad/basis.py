"""Composite Bernstein-Szegő basis on the node grid, with its weights.

The basis glues the untilded family (low indices) to the tilded family (high
indices).  In the middle range it is evaluated in the pole-free form
``2 exp(i(m xi / 2 + phi)) cos(l xi + phi)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .functions import c_function, phase, u_sum
from .gram import PolynomialFamily, gram_schmidt_low
from .nodes import DEFAULT_TOL, NodeGrid, solve_grid, verify_phase_condition
from .params import CompositeConfig

NODE_TOL = 1e-8


@dataclass(frozen=True)
class CompositeBasis:
    config: CompositeConfig
    grid: NodeGrid
    fam_p: PolynomialFamily
    fam_p_t: PolynomialFamily
    primal: np.ndarray
    dual: np.ndarray
    psi_matrix: np.ndarray  # [l, l_hat] -> psi_l(xi_{l_hat})

    @property
    def unitary(self) -> np.ndarray:
        return np.sqrt(np.outer(self.primal, self.dual)) * self.psi_matrix


def _check_nodes(config: CompositeConfig, xi: np.ndarray) -> None:
    if np.any(verify_phase_condition(config, xi) > NODE_TOL):
        raise ValueError("psi is only defined on grid nodes")


def psi(config: CompositeConfig, fam_p: PolynomialFamily, fam_p_t: PolynomialFamily, l: int, xi):
    """Composite basis function ``psi_l`` at node(s) ``xi``."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    _check_nodes(config, xi)
    m = config.m
    if not 0 <= l <= m:
        raise ValueError(f"l must lie in [0, {m}]")
    if l < config.fam.d_eps:
        return np.exp(0.5j * m * xi) * fam_p.normalized(l, xi) / c_function(config.fam, -xi)
    if l > m - config.fam_t.d_eps:
        return np.exp(-0.5j * m * xi) * fam_p_t.normalized(m - l, xi) / c_function(config.fam_t, xi)
    ph = phase(config.fam, xi)
    return 2.0 * np.exp(1j * (0.5 * m * xi + ph)) * np.cos(l * xi + ph)


def psi_tilde_form(config: CompositeConfig, l: int, xi):
    """Middle-range ``psi_l`` written through the tilded family."""
    xi = np.asarray(xi, dtype=float)
    ph = phase(config.fam_t, xi)
    return 2.0 * np.exp(-1j * (0.5 * config.m * xi + ph)) * np.cos((config.m - l) * xi + ph)


def gluing_residual(config: CompositeConfig, xi) -> float:
    """Largest gap between the two explicit forms over the middle range."""
    xi = np.asarray(xi, dtype=float)
    lo = max(0, config.fam.ceil_d_eps)
    hi = config.m - config.fam_t.d_eps
    worst = 0.0
    m = config.m
    ph = phase(config.fam, xi)
    for l in range(lo, int(np.floor(hi)) + 1):
        left = 2.0 * np.exp(1j * (0.5 * m * xi + ph)) * np.cos(l * xi + ph)
        worst = max(worst, float(np.max(np.abs(left - psi_tilde_form(config, l, xi)))))
    return worst


def primal_weights(config: CompositeConfig, fam_p: PolynomialFamily, fam_p_t: PolynomialFamily) -> np.ndarray:
    m = config.m
    out = np.ones(m + 1)
    for l in range(m + 1):
        if l <= config.fam.d_eps:
            out[l] = fam_p.norm(l)
        elif l >= m - config.fam_t.d_eps:
            out[l] = fam_p_t.norm(m - l)
    return out


def boundary_halving(config: CompositeConfig) -> np.ndarray:
    """Exponents of 1/2 in the dual weights (index form)."""
    m = config.m
    k = np.zeros(m + 1)
    k[0] += (1 - config.fam.eps_minus) * (1 - config.fam_t.eps_minus)
    k[m] += (1 - config.fam.eps_plus) * (1 - config.fam_t.eps_plus)
    return k


def christoffel_closed_form(config: CompositeConfig, xi):
    """``2 (m - d_eps - d~_eps~) + sum u_alpha(xi) + sum u_alpha~(xi)``."""
    xi = np.asarray(xi, dtype=float)
    return 2.0 * float(config.reduced_m) + u_sum(config.alphas, xi)


def dual_weights(config: CompositeConfig, grid: NodeGrid) -> np.ndarray:
    xi = grid.xi
    halving = boundary_halving(config)
    # the index form and the xi = 0 / xi = pi form of the halving must coincide
    endpoint = (xi == 0.0).astype(float) + (xi == np.pi).astype(float)
    assert np.array_equal(halving, endpoint), (halving, endpoint)
    return 0.5 ** halving / christoffel_closed_form(config, xi)


def build_basis(config: CompositeConfig, tol: float = DEFAULT_TOL, grid: NodeGrid | None = None) -> CompositeBasis:
    if grid is None:
        grid = solve_grid(config, tol)
    fam_p = gram_schmidt_low(config.fam)
    fam_p_t = gram_schmidt_low(config.fam_t)
    mat = np.array([psi(config, fam_p, fam_p_t, l, grid.xi) for l in range(config.m + 1)])
    return CompositeBasis(
        config,
        grid,
        fam_p,
        fam_p_t,
        primal_weights(config, fam_p, fam_p_t),
        dual_weights(config, grid),
        mat,
    )


def gram_residuals(basis: CompositeBasis) -> tuple[float, float]:
    """Deviations from both orthogonality relations, scaled by the norms.

    Row residual: ``max |sqrt(D_l D_k) sum_j psi_l psi_k^* Dhat_j - delta_lk|``;
    column residual likewise with the roles of the weights exchanged.
    """
    u = basis.unitary
    eye = np.eye(basis.config.m + 1)
    rowres = float(np.max(np.abs(u @ u.conj().T - eye)))
    colres = float(np.max(np.abs(u.T @ u.conj() - eye)))
    return rowres, colres


def cd_sum(config: CompositeConfig, fam_p: PolynomialFamily, fam_p_t: PolynomialFamily, xi,
           ell: int | None = None) -> np.ndarray:
    """Christoffel-Darboux diagonal ``sum_l |psi_l(xi)|^2 Delta^(m)_l`` via the split sum.

    The untilded family covers ``l = 0..m - ell`` and the tilded family the
    remaining indices; admissible ``ell`` satisfy
    ``ceil(d~_eps~) < ell <= m - ceil(d_eps)``.
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    _check_nodes(config, xi)
    m = config.m
    lo, hi = max(config.fam_t.ceil_d_eps + 1, 0), min(m - config.fam.ceil_d_eps, m)
    if ell is None:
        ell = lo
    if not lo <= ell <= hi:
        raise ValueError(f"split index ell = {ell} outside admissible range [{lo}, {hi}]")
    return _half_sum(config.fam, fam_p, m - ell, xi) + _half_sum(config.fam_t, fam_p_t, ell - 1, xi)


def _half_sum(fam, fam_p: PolynomialFamily, top: int, xi: np.ndarray) -> np.ndarray:
    # sum_{l <= top} p_l^2 Delta_l / |c|^2 with p_l/|c| = 2 cos(l xi + phi) above d_eps
    total = np.zeros_like(xi)
    ph = None
    for l in range(top + 1):
        if l < fam.d_eps:
            val = fam_p.normalized(l, xi) / np.abs(c_function(fam, xi))
            total = total + val ** 2 * fam_p.norm(l)
        else:
            if ph is None:
                ph = phase(fam, xi)
            val = 2.0 * np.cos(l * xi + ph)
            weight = fam_p.norm(l) if l == fam.d_eps else 1.0
            total = total + val ** 2 * weight
    return total


def cd_closed_form(config: CompositeConfig, xi) -> np.ndarray:
    """Right side of the summation formula, including endpoint doubling."""
    xi = np.asarray(xi, dtype=float)
    doubling = (xi == 0.0).astype(float) + (xi == np.pi).astype(float)
    return 2.0 ** doubling * christoffel_closed_form(config, xi)
