"""Closed-form functions of a Bernstein-Szegő family.

Everything here is vectorised over the angle ``xi`` (scalars or numpy arrays).
Conjugate pairs of ``alpha`` are always combined before a value is returned,
so the public results are real wherever the underlying quantity is real.
"""

from __future__ import annotations

import numpy as np

from .params import BSFamily


class PoleError(ValueError):
    """Evaluation hit a pole of c(xi) coming from an eps factor."""


_PAIR_IMAG_TOL = 1e-13


def u_weight(alpha: complex, x):
    """``(1 - a^2) / (1 + 2 a cos x + a^2)``; integrates to pi over [0, pi]."""
    x = np.asarray(x, dtype=float)
    if complex(alpha).imag == 0:
        a = complex(alpha).real
        return (1.0 - a * a) / (1.0 + 2.0 * a * np.cos(x) + a * a)
    a = complex(alpha)
    return (1.0 - a * a) / (1.0 + 2.0 * a * np.cos(x) + a * a)


def _real_antiderivative(a: float, x):
    # 2*arctan(((1-a)/(1+a)) tan(x/2)) on (-pi, pi], extended by F(x + 2 pi k) = F(x) + 2 pi k.
    x = np.asarray(x, dtype=float)
    k = np.ceil((x - np.pi) / (2.0 * np.pi))
    y = x - 2.0 * np.pi * k
    half = 0.5 * y
    return 2.0 * np.arctan2((1.0 - a) * np.sin(half), (1.0 + a) * np.cos(half)) + 2.0 * np.pi * k


def u_antiderivative(alpha: complex, xi):
    """``F_alpha(xi) = int_0^xi u_alpha(x) dx``.

    Real ``alpha`` uses the arctan closed form and returns floats.  Non-real
    ``alpha`` returns the complex value ``xi + i[Log(1 + a e^{i xi}) - Log(1 + a e^{-i xi})]``,
    which is continuous in ``xi`` because ``|a| < 1`` keeps both logarithms on
    the principal sheet.
    """
    alpha = complex(alpha)
    if alpha.imag == 0:
        return _real_antiderivative(alpha.real, xi)
    xi = np.asarray(xi, dtype=float)
    return xi + 1j * (np.log(1.0 + alpha * np.exp(1j * xi)) - np.log(1.0 + alpha * np.exp(-1j * xi)))


def pair_antiderivative(alpha: complex, xi):
    """``F_alpha + F_conj(alpha)`` for a conjugate pair, via the shifted real form.

    Uses ``Re u_a(x) = (u_r(x + t) + u_r(x - t)) / 2`` with ``a = r e^{it}``.
    """
    r, t = abs(alpha), float(np.angle(alpha))
    xi = np.asarray(xi, dtype=float)
    return (
        _real_antiderivative(r, xi + t)
        - _real_antiderivative(r, t)
        + _real_antiderivative(r, xi - t)
        - _real_antiderivative(r, -t)
    )


def u_sum(fam_or_alphas, x):
    """``sum_r u_{alpha_r}(x)`` with conjugate pairs combined (real)."""
    alphas = fam_or_alphas.alpha if isinstance(fam_or_alphas, BSFamily) else fam_or_alphas
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for a in alphas:
        a = complex(a)
        if a.imag == 0:
            total = total + u_weight(a, x)
        elif a.imag > 0:
            pair = u_weight(a, x) + u_weight(a.conjugate(), x)
            resid = np.max(np.abs(pair.imag) / np.maximum(1.0, np.abs(pair.real)))
            assert resid < _PAIR_IMAG_TOL, resid
            total = total + pair.real
    return total


def antiderivative_sum(fam_or_alphas, xi):
    """``sum_r F_{alpha_r}(xi)`` with conjugate pairs combined (real)."""
    alphas = fam_or_alphas.alpha if isinstance(fam_or_alphas, BSFamily) else fam_or_alphas
    xi = np.asarray(xi, dtype=float)
    total = np.zeros_like(xi)
    for a in alphas:
        a = complex(a)
        if a.imag == 0:
            total = total + _real_antiderivative(a.real, xi)
        elif a.imag > 0:
            total = total + pair_antiderivative(a, xi)
    return total


def chebyshev_rho(eps_plus: int, eps_minus: int, xi):
    """Chebyshev weight ``2^(e+ + e-) (1 + e+ cos xi)(1 - e- cos xi)``."""
    c = np.cos(np.asarray(xi, dtype=float))
    return 2.0 ** (eps_plus + eps_minus) * (1.0 + eps_plus * c) * (1.0 - eps_minus * c)


def denominator(fam_or_alphas, xi):
    """``prod_r (1 + 2 alpha_r cos xi + alpha_r^2)``, real and positive."""
    alphas = fam_or_alphas.alpha if isinstance(fam_or_alphas, BSFamily) else fam_or_alphas
    c = np.cos(np.asarray(xi, dtype=float))
    out = np.ones_like(c)
    for a in alphas:
        a = complex(a)
        if a.imag == 0:
            out = out * (1.0 + 2.0 * a.real * c + a.real ** 2)
        elif a.imag > 0:
            out = out * np.abs(1.0 + 2.0 * a * c + a * a) ** 2
    return out


def c_function(fam: BSFamily, xi):
    """Direct complex evaluation of c(xi).

    Raises :class:`PoleError` at the eps poles (xi = 0 for eps_minus,
    xi = pi for eps_plus, modulo 2 pi); use :func:`phase` and
    :func:`abs_c` there instead.
    """
    xi = np.asarray(xi, dtype=float)
    z = np.exp(-1j * xi)
    num = np.ones_like(z)
    for a in fam.alpha:
        num = num * (1.0 + a * z)
    den = (1.0 + fam.eps_plus * z) * (1.0 - fam.eps_minus * z)
    if np.any(np.abs(den) < 1e-14):
        raise PoleError("c(xi) has a pole here; evaluate via the phase/limit path instead")
    return num / den


def phase(fam: BSFamily, xi):
    """Continuous argument of c(xi) on [0, pi].

    ``phi = sum_r F_{alpha_r}(xi) / 2 - d_eps xi - eps_minus pi / 2``; it
    satisfies ``exp(2 i phi) = c(xi) / c(-xi)`` and stays finite at the eps
    poles, where only |c| blows up.
    """
    xi = np.asarray(xi, dtype=float)
    return 0.5 * antiderivative_sum(fam, xi) - float(fam.d_eps) * xi - 0.5 * np.pi * fam.eps_minus


def abs_c(fam: BSFamily, xi):
    """|c(xi)| = sqrt(denominator / rho); infinite at eps poles."""
    rho = chebyshev_rho(fam.eps_plus, fam.eps_minus, xi)
    with np.errstate(divide="ignore"):
        return np.sqrt(denominator(fam, xi) / rho)


def weight_w(fam: BSFamily, xi):
    """Orthogonality weight ``1 / (2 pi |c(xi)|^2)`` on the open interval (0, pi)."""
    xi = np.asarray(xi, dtype=float)
    if np.any((xi <= 0) | (xi >= np.pi)):
        raise ValueError("weight_w is defined on the open interval (0, pi)")
    return chebyshev_rho(fam.eps_plus, fam.eps_minus, xi) / (2.0 * np.pi * denominator(fam, xi))


def q_poly(fam: BSFamily, l: int, xi):
    """``q_l(xi) = c(xi) e^{i l xi} + c(-xi) e^{-i l xi}`` for any integer l.

    Evaluated as ``2 |c| cos(l xi + phi)``.  For ``l >= d_eps`` this is the
    normalised polynomial of degree l.
    """
    xi = np.asarray(xi, dtype=float)
    rho = chebyshev_rho(fam.eps_plus, fam.eps_minus, xi)
    if np.any(rho == 0):
        raise PoleError("q_l is singular at an eps-pole endpoint")
    return 2.0 * abs_c(fam, xi) * np.cos(l * xi + phase(fam, xi))


def q_poly_direct(fam: BSFamily, l: int, xi):
    """Same as :func:`q_poly` but by complex arithmetic on c(xi)."""
    xi = np.asarray(xi, dtype=float)
    return 2.0 * np.real(c_function(fam, xi) * np.exp(1j * l * xi))


def explicit_norm_delta(fam: BSFamily, l: int) -> float:
    """Norm ``Delta_l`` from the closed form, valid for ``l >= d_eps``."""
    if l < fam.d_eps:
        raise ValueError(f"l = {l} < d_eps = {fam.d_eps}: use gram_schmidt_low for low degrees")
    if l == fam.d_eps:
        return 1.0 / (1.0 + (-1) ** fam.eps_minus * fam.alpha_product())
    return 1.0
