import math

import numpy as np
import pytest

from bsquad.jacobi import JacobiOperator
from bsquad.oracle import bisect_node, reference_integral, tridiag_charpoly, tridiag_eig
from bsquad.params import make_config


def test_integrator_smooth():
    rep = reference_integral(np.sin)
    assert rep.converged
    assert rep.value == pytest.approx(2.0, abs=1e-14)
    assert reference_integral(np.exp, a=0, b=1).value == pytest.approx(math.e - 1, abs=1e-14)


def test_integrator_peaked():
    # Poisson kernel with alpha = -0.95: integral over (0, pi) equals pi
    f = lambda x: (1 - 0.95 ** 2) / (1 - 1.9 * np.cos(x) + 0.95 ** 2)
    assert reference_integral(f).value == pytest.approx(np.pi, rel=1e-13)


def test_integrator_budget():
    rep = reference_integral(lambda x: np.sign(x - 1.0), max_evals=200)
    assert not rep.converged


def test_bisection_chebyshev():
    cfg = make_config((1, 1, []), (1, 1, []), 3)
    for l in range(4):
        assert bisect_node(cfg, l) == pytest.approx(np.pi * (l + 1) / 5, abs=1e-15)


def test_dense_eig_and_det():
    op = JacobiOperator(np.array([1.0, 2.0]), np.array([0.5, -1.0, 0.0]), np.array([1.0, 2.0]), symmetric=True)
    vals, vecs = tridiag_eig(op)
    assert np.allclose(vals, np.linalg.eigvalsh(op.dense()))
    assert np.allclose(vecs.T @ vecs, np.eye(3))
    lam = np.array([0.3, -2.0, 1.7])
    ref = [np.linalg.det(x * np.eye(3) - op.dense()) for x in lam]
    assert np.allclose(tridiag_charpoly(op, lam), ref)
    with pytest.raises(ValueError):
        tridiag_eig(JacobiOperator(np.ones(2), np.zeros(3), 2 * np.ones(2)))
