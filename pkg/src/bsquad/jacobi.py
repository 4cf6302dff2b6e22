"""Finite Jacobi matrices diagonalised by the composite basis, and their
characteristic polynomial."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as C

from .basis import CompositeBasis
from .functions import explicit_norm_delta, q_poly
from .gram import PolynomialFamily
from .params import BSFamily, CompositeConfig, validate_pair
from .quadrature import build_rule, integrate_function


@dataclass(frozen=True)
class JacobiOperator:
    """Tridiagonal matrix stored by bands.

    ``sub[l - 1]`` is entry ``(l, l - 1)``, ``sup[l]`` is entry ``(l, l + 1)``.
    """

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray
    symmetric: bool = False

    @property
    def size(self) -> int:
        return len(self.diag)

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.sub, -1) + np.diag(self.sup, 1)

    def matvec(self, f: np.ndarray) -> np.ndarray:
        out = self.diag * f
        out[1:] += self.sub * f[:-1]
        out[:-1] += self.sup * f[1:]
        return out


def build_L(config: CompositeConfig, fam_p: PolynomialFamily, fam_p_t: PolynomialFamily) -> JacobiOperator:
    """Non-symmetric tridiagonal operator with the composite basis as eigenvectors."""
    m = config.m
    top, bottom = config.fam.ceil_d_eps, m - config.fam_t.ceil_d_eps
    sub, diag, sup = np.ones(m), np.zeros(m + 1), np.ones(m)
    for l in range(m + 1):
        if l <= top:
            diag[l] = fam_p.b_coef(l)
            if l < m:
                sup[l] = fam_p.a_coef(l + 1) ** 2
        elif l >= bottom:
            diag[l] = fam_p_t.b_coef(m - l)
            if l > 0:
                sub[l - 1] = fam_p_t.a_coef(m - l + 1) ** 2
    return JacobiOperator(sub, diag, sup)


def build_J(config: CompositeConfig, fam_p: PolynomialFamily, fam_p_t: PolynomialFamily) -> JacobiOperator:
    """Symmetric Jacobi matrix, entry by entry from the branch formulas."""
    m = config.m
    top, bottom = config.fam.ceil_d_eps, m - config.fam_t.ceil_d_eps
    off = np.empty(m)
    diag = np.zeros(m + 1)
    for l in range(m):
        if l < top:
            off[l] = fam_p.a_coef(l + 1)
        elif l < bottom:
            off[l] = (fam_p.norm(l) * fam_p_t.norm(m - l - 1)) ** -0.5
        else:
            off[l] = fam_p_t.a_coef(m - l)
    for l in range(m + 1):
        if l <= top:
            diag[l] = fam_p.b_coef(l)
        elif l >= bottom:
            diag[l] = fam_p_t.b_coef(m - l)
    return JacobiOperator(off, diag, off.copy(), symmetric=True)


def similarity_transform(op: JacobiOperator, primal: np.ndarray) -> JacobiOperator:
    """``D^(1/2) L D^(-1/2)`` for the diagonal matrix D of primal weights."""
    s = np.sqrt(primal)
    return JacobiOperator(op.sub * s[1:] / s[:-1], op.diag.copy(), op.sup * s[:-1] / s[1:])


def eig_check(config: CompositeConfig, basis: CompositeBasis, op: JacobiOperator) -> float:
    """Worst relative residual of ``L psi(xi) = 2 cos(xi) psi(xi)`` over the nodes."""
    worst = 0.0
    for j, x in enumerate(basis.grid.xi):
        v = basis.psi_matrix[:, j]
        r = op.matvec(v) - 2.0 * np.cos(x) * v
        worst = max(worst, float(np.max(np.abs(r)) / np.max(np.abs(v))))
    return worst


def elementary_symmetric(alpha_t) -> np.ndarray:
    """Coefficients ``e_0..e_d`` of ``prod_r (1 + alpha_r z)``."""
    coeffs = np.array([1.0 + 0j])
    for a in alpha_t:
        coeffs = np.convolve(coeffs, [1.0, complex(a)])
    if np.all(np.abs(coeffs.imag) <= 1e-14 * np.maximum(1.0, np.abs(coeffs.real))):
        return coeffs.real
    return coeffs


def shifted_elementary(alpha_t, x: int, y: int) -> np.ndarray:
    """``e_k(alpha; x; y) = e_k + (x - y) e_{k-1} - x y e_{k-2}``.

    These are the coefficients of ``(1 + x z)(1 - y z) prod (1 + alpha_r z)``.
    """
    return np.real_if_close(np.convolve(elementary_symmetric(alpha_t), np.convolve([1.0, x], [1.0, -y])))


def charpoly_coefficients(config: CompositeConfig) -> np.ndarray:
    """Weights ``e_k(alpha~; 1 - eps~+; 1 - eps~-)`` for ``k = 0..2(d~_eps~ + 1)``."""
    ft = config.fam_t
    e = shifted_elementary(ft.alpha, 1 - ft.eps_plus, 1 - ft.eps_minus)
    n = int(2 * (ft.d_eps + 1))
    return np.asarray(e[: n + 1], dtype=float)


def charpoly_eval(config: CompositeConfig, xi):
    """``Q_{m+1}(xi) = sum_k e_k q_{m+1-k}(xi)`` at interior angles."""
    xi = np.asarray(xi, dtype=float)
    total = np.zeros_like(xi)
    for k, e in enumerate(charpoly_coefficients(config)):
        total = total + e * q_poly(config.fam, config.m + 1 - k, xi)
    return total


def charpoly_cosine_coeffs(config: CompositeConfig) -> np.ndarray:
    """Coefficients of ``Q_{m+1}`` on ``cos(k xi)``, ``k = 0..m+1``.

    Obtained by interpolation at first-kind Chebyshev points, which stay
    inside (0, pi) where ``q_l`` is evaluated without poles.
    """
    return C.chebinterpolate(lambda x: charpoly_eval(config, np.arccos(x)), config.m + 1)


def charpoly_expansion_check(config: CompositeConfig):
    """Recover the expansion of ``Q_{m+1}`` on the normalised polynomials.

    Projections are computed with a Gauss-type rule for the same weight that is
    exact to degree ``2m + 5``.  Returns ``(residual, recovered, expected)``
    or ``None`` when ``2 d~_eps~ > m - 1 - d_eps`` (the coefficients are then
    not given by the shifted elementary symmetric functions).
    """
    if 2 * config.fam_t.d_eps > config.m - 1 - config.fam.d_eps:
        return None
    m = config.m
    gauss = build_rule(validate_pair(config.fam, BSFamily(1, 1, ()), m + 2))
    expected_e = charpoly_coefficients(config)
    low = max(0, config.fam.ceil_d_eps)
    js = list(range(m + 1, low - 1, -1))
    recovered, expected = [], []
    for j in js:
        norm = explicit_norm_delta(config.fam, j)
        inner = integrate_function(gauss, lambda x, j=j: charpoly_eval(config, x) * q_poly(config.fam, j, x))
        recovered.append(norm * inner)
        k = m + 1 - j
        expected.append(expected_e[k] if k < len(expected_e) else 0.0)
    recovered, expected = np.array(recovered), np.array(expected)
    return float(np.max(np.abs(recovered - expected))), recovered, expected
