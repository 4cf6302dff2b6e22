import numpy as np
import pytest
from hypothesis import given, settings

from bsquad.functions import explicit_norm_delta, q_poly, weight_w
from bsquad.gram import (GramError, cosine_eval, fourier_moments, gram_schmidt_low, recurrence_coeffs,
                         times_two_cos)
from bsquad.oracle import reference_integral
from bsquad.params import validate_family

from strategies import families

AW = validate_family(1, 1, [0.2, 0.2, 0.2, 0.2])

# frozen from oracle.reference_integral of p_l^2 w
MIXED_NORMS = [0.7824150002358734, 0.8330553087795585, 1.0550749103186325, 1.0, 1.0]


def test_moments_chebyshev():
    assert np.allclose(fourier_moments(validate_family(1, 1, []), 2), [1, 0, -0.5], atol=1e-15)
    assert np.allclose(fourier_moments(validate_family(0, 0, []), 3), [0.5, 0, 0, 0], atol=1e-15)


@pytest.mark.parametrize("args", [(1, 1, [0.2, 0.2, 0.2, 0.2]), (0, 1, [0.7, -0.5]), (1, 0, [[0.3, 0.6], [0.3, -0.6]])])
def test_moments_against_oracle(args):
    fam = validate_family(*args)
    mu = fourier_moments(fam, 6)
    for k in range(7):
        ref = reference_integral(lambda x: np.cos(k * x) * weight_w(fam, x)).value
        assert mu[k] == pytest.approx(ref, abs=1e-14)


def test_askey_wilson_norms():
    fp = gram_schmidt_low(AW)
    assert fp.norm(0) == pytest.approx(1.2754903408725569, abs=1e-13)
    assert fp.norm(1) == pytest.approx(1.001602564102564, abs=1e-13)
    assert fp.b_coef(0) == pytest.approx(-0.7692307692307694, abs=1e-13)
    assert fp.b_coef(1) == pytest.approx(-0.03076923076923066, abs=1e-13)
    assert fp.norm(2) == pytest.approx(1.0, abs=1e-13)
    assert fp.a_coef(2) == pytest.approx(fp.norm(1) ** -0.5, abs=1e-13)


def test_mixed_family_frozen():
    fam = validate_family(0, 0, [0.6, -0.3, [0.2, 0.5], [0.2, -0.5]])
    fp = gram_schmidt_low(fam)
    assert np.allclose(fp.delta, MIXED_NORMS, atol=1e-13)


def test_l_max_floor():
    with pytest.raises(ValueError):
        gram_schmidt_low(validate_family(0, 0, [0.1, 0.2, 0.3, 0.4]), l_max=1)
    assert issubclass(GramError, ArithmeticError)


def test_cosine_helpers():
    x = np.linspace(0, np.pi, 9)
    c = np.array([0.5, -1.0, 2.0])
    assert np.allclose(cosine_eval(times_two_cos(c), x), 2 * np.cos(x) * cosine_eval(c, x))


@settings(max_examples=40, deadline=None)
@given(families())
def test_orthogonality_and_stabilisation(fam):
    fp = gram_schmidt_low(fam)
    n = fp.l_max + 1
    g = np.array([[fp.inner(fp.coeffs[i], fp.coeffs[j]) for j in range(n)] for i in range(n)])
    scale = np.sqrt(np.outer(fp.delta, fp.delta))
    # moment route, independent of the sampled construction
    assert np.max(np.abs(g / scale - np.eye(n))) < 1e-10
    # above d_eps the monic polynomials match q_l times the closed-form norm
    x = np.linspace(0.2, 2.9, 5)
    for l in range(max(fam.ceil_d_eps, 0), n):
        if l >= fam.d_eps:
            assert fp.norm(l) == pytest.approx(explicit_norm_delta(fam, l), rel=1e-11)
            assert np.allclose(fp.monic(l, x), q_poly(fam, l, x) * fp.norm(l), atol=1e-11)
    a, b = recurrence_coeffs(fp)
    for l in range(fam.ceil_d_eps + 1, fp.l_max):
        assert a[l] == pytest.approx(1.0, abs=1e-11)
        assert b[l] == pytest.approx(0.0, abs=1e-11)
