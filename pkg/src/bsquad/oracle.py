"""Brute-force references used to cross-check the constructions.

None of these reuse the structural formulas they are meant to check: the
integrator knows nothing about orthogonal polynomials, node bisection only
uses monotonicity, and the eigen-decomposition is a dense LAPACK call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .jacobi import JacobiOperator
from .nodes import lhs_phi, node_target
from .params import CompositeConfig

# Gauss-Kronrod 7/15 pair (QUADPACK qk15), nodes on [-1, 1], non-negative half.
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
_X15 = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_W15 = np.concatenate([_WGK[:-1], _WGK[::-1]])
_W7 = np.zeros(15)
_W7[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])


@dataclass(frozen=True)
class OracleReport:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool = True


def reference_integral(func, tol: float = 1e-13, a: float = 0.0, b: float = math.pi,
                       max_evals: int = 2_000_000) -> OracleReport:
    """Adaptive Gauss-Kronrod (7/15) integration of a vectorised ``func`` over [a, b].

    Panels are accepted once ``|K15 - G7|`` falls below their share of
    ``tol`` or below the rounding floor of the panel, or once they are
    narrower than ``(b - a) * 2**-30`` (further splitting only resolves
    rounding noise of ``func``).  The rule is open, so the endpoints are never
    sampled.
    """
    edges = np.linspace(a, b, 9)
    pending = np.column_stack([edges[:-1], edges[1:]])
    total, err_total, evals = 0.0, 0.0, 0
    eps = np.finfo(float).eps
    min_width = (b - a) * 2.0 ** -30
    while len(pending):
        mid = 0.5 * (pending[:, 0] + pending[:, 1])
        half = 0.5 * (pending[:, 1] - pending[:, 0])
        x = mid[:, None] + half[:, None] * _X15[None, :]
        fx = np.asarray(func(x.ravel()), dtype=float).reshape(x.shape)
        evals += fx.size
        k15 = half * (fx @ _W15)
        g7 = half * (fx @ _W7)
        err = np.abs(k15 - g7)
        floor = 50.0 * eps * half * (np.abs(fx) @ _W15)
        ok = (err <= tol * (2.0 * half) / (b - a)) | (err <= floor) | (2.0 * half < min_width)
        total += float(k15[ok].sum())
        err_total += float(err[ok].sum())
        pending = pending[~ok]
        if evals > max_evals and len(pending):
            mid = 0.5 * (pending[:, 0] + pending[:, 1])
            half = 0.5 * (pending[:, 1] - pending[:, 0])
            x = mid[:, None] + half[:, None] * _X15[None, :]
            fx = np.asarray(func(x.ravel()), dtype=float).reshape(x.shape)
            k15, g7 = half * (fx @ _W15), half * (fx @ _W7)
            return OracleReport(total + float(k15.sum()), err_total + float(np.abs(k15 - g7).sum()),
                                evals + fx.size, converged=False)
        split = pending.mean(axis=1)
        pending = np.concatenate([
            np.column_stack([pending[:, 0], split]),
            np.column_stack([split, pending[:, 1]]),
        ])
    return OracleReport(total, err_total, evals)


def bisect_node(config: CompositeConfig, l_hat: int, tol: float = 1e-15) -> float:
    """Plain bisection of ``Phi(xi) - target`` on [0, pi]."""
    target = node_target(config, l_hat)
    lo, hi = 0.0, math.pi
    if float(lhs_phi(config, lo)) >= target:
        return lo
    if float(lhs_phi(config, hi)) <= target:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if float(lhs_phi(config, mid)) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def tridiag_eig(op: JacobiOperator) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric band operator.

    Each eigenvector is signed so its first nonzero component is positive.
    """
    if not np.array_equal(op.sub, op.sup):
        raise ValueError("tridiag_eig needs a symmetric operator")
    values, vectors = eigh_tridiagonal(op.diag, op.sub)
    for k in range(vectors.shape[1]):
        nz = np.flatnonzero(np.abs(vectors[:, k]) > 1e-300)
        if nz.size and vectors[nz[0], k] < 0:
            vectors[:, k] *= -1
    return values, vectors


def tridiag_charpoly(op: JacobiOperator, lam) -> np.ndarray:
    """``det(lam I - T)`` by the three-term determinant recurrence."""
    lam = np.asarray(lam, dtype=float)
    prev = np.ones_like(lam)
    cur = lam - op.diag[0]
    for k in range(1, op.size):
        prev, cur = cur, (lam - op.diag[k]) * cur - op.sub[k - 1] * op.sup[k - 1] * prev
    return cur
