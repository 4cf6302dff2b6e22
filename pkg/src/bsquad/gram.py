"""Low-degree Bernstein-Szegő polynomials by Gram-Schmidt.

Below the threshold ``d_eps`` the polynomials have no closed form, so they are
orthogonalised numerically.  Fourier-cosine moments of the weight are also
computed here; they give a second, independent route to the inner product.
Polynomials are stored as coefficient rows on the cosine monomials
``phi_0 = 1``, ``phi_k = e^{ik xi} + e^{-ik xi} = 2 cos(k xi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .functions import weight_w
from .params import BSFamily


class GramError(ArithmeticError):
    """Gram-Schmidt produced a non-positive norm."""


def _factor_series(alpha: complex, n: int) -> np.ndarray:
    # two-sided Fourier coefficients (index -n..n) of 1 / (1 + 2 a cos x + a^2)
    j = np.abs(np.arange(-n, n + 1))
    return (-complex(alpha)) ** j / (1.0 - complex(alpha) ** 2)


def _center(series: np.ndarray, n: int) -> np.ndarray:
    mid = len(series) // 2
    return series[mid - n: mid + n + 1]


def fourier_moments(fam: BSFamily, k_max: int) -> np.ndarray:
    """Moments ``mu_k = int_0^pi cos(k xi) w(xi) d xi`` for ``k = 0..k_max``.

    The weight is expanded as a product of truncated Fourier series, so no
    quadrature is involved; accuracy is at the level of rounding.
    """
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    amax = max((abs(a) for a in fam.alpha), default=0.0)
    n = k_max + fam.d + 2
    if amax > 0:
        n += math.ceil(math.log(1e-16) / math.log(amax))
    series = np.zeros(2 * n + 1, dtype=complex)
    series[n] = 1.0
    for a in fam.alpha:
        series = _center(np.convolve(series, _factor_series(a, n)), n)
    rho = np.array([1.0])
    if fam.eps_plus:
        rho = np.convolve(rho, [1.0, 2.0, 1.0])
    if fam.eps_minus:
        rho = np.convolve(rho, [-1.0, 2.0, -1.0])
    series = np.convolve(series, rho)
    mid = len(series) // 2
    coeffs = series[mid: mid + k_max + 1]
    if fam.alpha:
        assert np.max(np.abs(coeffs.imag)) < 1e-12
    return 0.5 * coeffs.real


def _gram_matrix(mu: np.ndarray, size: int) -> np.ndarray:
    g = np.empty((size, size))
    for j in range(size):
        for k in range(size):
            if j == 0 and k == 0:
                g[j, k] = mu[0]
            elif j == 0 or k == 0:
                g[j, k] = 2.0 * mu[j + k]
            else:
                g[j, k] = 2.0 * (mu[j + k] + mu[abs(j - k)])
    return g


def times_two_cos(coeffs: np.ndarray) -> np.ndarray:
    """Multiply a cosine-monomial expansion by ``2 cos xi`` (length grows by one)."""
    out = np.zeros(len(coeffs) + 1)
    for k, c in enumerate(coeffs):
        out[k + 1] += c
        if k == 1:
            out[0] += 2.0 * c
        elif k > 1:
            out[k - 1] += c
    return out


def cosine_eval(coeffs: np.ndarray, xi):
    """Evaluate ``sum_k coeffs[k] phi_k(xi)``."""
    xi = np.asarray(xi, dtype=float)
    total = np.full_like(xi, coeffs[0] if len(coeffs) else 0.0)
    for k in range(1, len(coeffs)):
        if coeffs[k] != 0.0:
            total = total + 2.0 * coeffs[k] * np.cos(k * xi)
    return total


@dataclass(frozen=True)
class PolynomialFamily:
    """Monic polynomials ``p_0..p_{L_max}`` with norms and recurrence data.

    ``a[j]`` holds ``a_{j+1}`` and ``b[l]`` holds ``b_l``.  Lookups past
    ``L_max`` fall back on the stabilised values (norm 1, a = 1, b = 0),
    which is valid since ``L_max > d_eps``.
    """

    fam: BSFamily
    coeffs: np.ndarray
    delta: np.ndarray
    a: np.ndarray
    b: np.ndarray
    moments: np.ndarray

    @property
    def l_max(self) -> int:
        return len(self.delta) - 1

    def norm(self, l: int) -> float:
        if l <= self.l_max:
            return float(self.delta[l])
        return 1.0

    def a_coef(self, l: int) -> float:
        """``a_l`` for ``l >= 1``."""
        if l - 1 < len(self.a):
            return float(self.a[l - 1])
        return 1.0

    def b_coef(self, l: int) -> float:
        if l < len(self.b):
            return float(self.b[l])
        return 0.0

    def monic(self, l: int, xi):
        return cosine_eval(self.coeffs[l], xi)

    def normalized(self, l: int, xi):
        """``p_l(xi) / Delta_l``."""
        return self.monic(l, xi) / self.delta[l]

    def inner(self, f: np.ndarray, g: np.ndarray) -> float:
        """Weighted inner product of two cosine expansions, from the moments."""
        size = max(len(f), len(g))
        f = np.pad(f, (0, size - len(f)))
        g = np.pad(g, (0, size - len(g)))
        return float(f @ _gram_matrix(self.moments, size) @ g)


def default_l_max(fam: BSFamily) -> int:
    return max(fam.ceil_d_eps + 2, 2)


def sample_size(fam: BSFamily, degree: int) -> int:
    """Midpoint-grid size that integrates degree-``degree`` cosine polynomials
    against the weight to rounding accuracy."""
    amax = max((abs(a) for a in fam.alpha), default=0.0)
    n = degree + 8
    if amax > 0:
        n += math.ceil(math.log(1e-17) / math.log(amax) / 2)
    return n


def gram_schmidt_low(fam: BSFamily, l_max: int | None = None) -> PolynomialFamily:
    """Orthogonalise against the family's weight up to degree ``l_max``.

    Each new vector is ``2 cos(xi) p_l``, which extends the cosine-monomial
    flag with leading coefficient one; it is orthogonalised against all
    previous ``p_j`` by classical Gram-Schmidt with one reorthogonalisation
    pass.  Inner products use the weight sampled on a midpoint grid, which is
    exact for the trigonometric products involved up to a tail of order
    ``max|alpha|^(2N)``.  Working on sampled values rather than through the
    moment Gram matrix keeps the construction well conditioned when the
    weight has a large dynamic range.
    """
    if l_max is None:
        l_max = default_l_max(fam)
    if l_max < fam.ceil_d_eps + 1:
        raise ValueError(f"l_max = {l_max} must be at least ceil(d_eps) + 1 = {fam.ceil_d_eps + 1}")
    n = sample_size(fam, 2 * l_max + 2)
    xs = np.pi * (np.arange(n) + 0.5) / n
    omega = (np.pi / n) * weight_w(fam, xs)
    two_cos = 2.0 * np.cos(xs)

    size = l_max + 2
    coeffs = np.zeros((l_max + 1, size))
    values = np.zeros((l_max + 1, n))
    delta = np.zeros(l_max + 1)
    b = np.zeros(l_max + 1)
    coeffs[0, 0] = 1.0
    values[0] = 1.0
    delta[0] = omega.sum()
    for l in range(l_max + 1):
        vals = two_cos * values[l]
        cvec = times_two_cos(coeffs[l])[:size]
        for _ in range(2):
            proj = [np.dot(vals * omega, values[j]) / delta[j] for j in range(l + 1)]
            b[l] += proj[l]
            for j in range(l + 1):
                vals = vals - proj[j] * values[j]
                cvec = cvec - proj[j] * coeffs[j]
        if l == l_max:
            break
        values[l + 1] = vals
        coeffs[l + 1] = cvec
        delta[l + 1] = np.dot(vals * omega, vals)
        if not delta[l + 1] > 0:
            raise GramError(f"non-positive norm Delta_{l + 1} = {delta[l + 1]}")
    a = np.sqrt(delta[1:] / delta[:-1])
    mu = fourier_moments(fam, 2 * size)
    return PolynomialFamily(fam, coeffs, delta, a, b, mu)


def recurrence_coeffs(fam_p: PolynomialFamily) -> tuple[np.ndarray, np.ndarray]:
    """``(a_1..a_{L_max}, b_0..b_{L_max})`` of ``2 cos p_l = p_{l-1} + b_l p_l + a_{l+1}^2 p_{l+1}``."""
    return fam_p.a.copy(), fam_p.b.copy()
