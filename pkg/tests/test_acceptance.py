"""Acceptance criteria 1-9, each at its stated tolerance.

Run ``pytest tests/test_acceptance.py`` (the summary lists one PASS/FAIL line
per criterion) or ``python3 tests/test_acceptance.py`` for a plain report.
"""

import itertools
import math
import time

import numpy as np

from bsquad.basis import build_basis, cd_closed_form, cd_sum, gram_residuals
from bsquad.functions import explicit_norm_delta
from bsquad.gram import gram_schmidt_low
from bsquad.jacobi import build_J, charpoly_cosine_coeffs, charpoly_eval, charpoly_expansion_check
from bsquad.nodes import check_bounds, solve_grid
from bsquad.oracle import tridiag_charpoly
from bsquad.params import validate_family, validate_pair
from bsquad.quadrature import Kind, build_rule, exactness_sweep

from conftest import ACCEPTANCE, sweep_configs


def _record(k, ok, detail):
    ACCEPTANCE[k] = (bool(ok), detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def exact_nodes(ep, em, ept, emt, m):
    # d = d~ = 0: Phi is linear, so nodes are evenly spaced
    return np.pi * (2 * np.arange(m + 1) + em + emt) / (2 * m + ep + em + ept + emt)


def test_criterion_1_closed_form_nodes():
    worst, slowest = 0.0, 0.0
    for ep, em, ept, emt in itertools.product((0, 1), repeat=4):
        fam, fam_t = validate_family(ep, em), validate_family(ept, emt)
        for m in (1, 2, 3, 7, 16, 33, 64):
            t0 = time.perf_counter()
            grid = solve_grid(validate_pair(fam, fam_t, m))
            slowest = max(slowest, time.perf_counter() - t0)
            worst = max(worst, float(np.max(np.abs(grid.xi - exact_nodes(ep, em, ept, emt, m)))))
    _record(1, worst < 1e-14 and slowest < 0.1, f"max |dxi| = {worst:.2e}, slowest solve {slowest * 1e3:.1f} ms")


def test_criterion_2_orthogonality():
    t0 = time.perf_counter()
    worst = 0.0
    configs = sweep_configs()
    for cfg in configs:
        worst = max(worst, *gram_residuals(build_basis(cfg)))
    elapsed = time.perf_counter() - t0
    _record(2, len(configs) >= 50 and worst < 1e-10 and elapsed < 30,
            f"{len(configs)} configs, max residual {worst:.2e}, {elapsed:.2f} s")


def test_criterion_3_eigenvalues():
    worst = 0.0
    for cfg in sweep_configs():
        basis = build_basis(cfg)
        J = build_J(cfg, basis.fam_p, basis.fam_p_t)
        dense = np.linalg.eigvalsh(J.dense())
        worst = max(worst, float(np.max(np.abs(np.sort(dense) - np.sort(2 * np.cos(basis.grid.xi))))))
    _record(3, worst < 1e-10, f"max eigenvalue mismatch {worst:.2e}")


def test_criterion_4_christoffel_darboux():
    worst, endpoint_cases = 0.0, 0
    for cfg in sweep_configs():
        basis = build_basis(cfg)
        xi = basis.grid.xi
        lhs = cd_sum(cfg, basis.fam_p, basis.fam_p_t, xi)
        worst = max(worst, float(np.max(np.abs(lhs / cd_closed_form(cfg, xi) - 1))))
        endpoint_cases += int(cfg.left_endpoint) + int(cfg.right_endpoint)
    # the d = 0 Chebyshev cases with both endpoint nodes
    for ep, em in itertools.product((0, 1), repeat=2):
        cfg = validate_pair(validate_family(ep, em), validate_family(0, 0), 5)
        basis = build_basis(cfg)
        xi = basis.grid.xi
        lhs = cd_sum(cfg, basis.fam_p, basis.fam_p_t, xi)
        worst = max(worst, float(np.max(np.abs(lhs / cd_closed_form(cfg, xi) - 1))))
        endpoint_cases += int(cfg.left_endpoint) + int(cfg.right_endpoint)
    _record(4, worst < 1e-10 and endpoint_cases > 0,
            f"max relative error {worst:.2e}, {endpoint_cases} endpoint nodes covered")


def test_criterion_5_exactness():
    worst, sharp, n_gauss = 0.0, math.inf, 0
    for k, cfg in enumerate(sweep_configs()):
        rule = build_rule(cfg)
        rep = exactness_sweep(rule, seed=k)
        worst = max(worst, rep.max_exact_error)
        if rule.kind is Kind.GAUSS:
            n_gauss += 1
            sharp = min(sharp, rep.sharpness_error)
    _record(5, worst < 1e-9 and n_gauss > 0 and sharp > 1e-6,
            f"max error degree <= D: {worst:.2e}; min gauss error at D+1: {sharp:.2e} over {n_gauss} rules")


def test_criterion_6_characteristic_polynomial():
    rng = np.random.default_rng(6)
    at_nodes = det_rel = lead_rel = 0.0
    for cfg in sweep_configs():
        basis = build_basis(cfg)
        m = cfg.m
        xi = basis.grid.xi
        interior = xi[(xi > 0) & (xi < np.pi)]
        if len(interior):
            at_nodes = max(at_nodes, float(np.max(np.abs(charpoly_eval(cfg, interior)))) / 2.0 ** (m + 1))
        J = build_J(cfg, basis.fam_p, basis.fam_p_t)
        probe = rng.uniform(0.01, np.pi - 0.01, 20)
        q, det = charpoly_eval(cfg, probe), tridiag_charpoly(J, 2 * np.cos(probe))
        det_rel = max(det_rel, float(np.max(np.abs(q - det) / np.maximum(np.abs(q), np.abs(det)))))
        # leading coefficient on cos(xi)^(m+1): cosine coefficient times 2^m
        lead = charpoly_cosine_coeffs(cfg)[-1] * 2.0 ** m
        lead_rel = max(lead_rel, abs(lead / 2.0 ** (m + 1) - 1))
    ok = at_nodes < 1e-8 and det_rel < 1e-8 and lead_rel < 1e-8
    _record(6, ok, f"|Q|/2^(m+1) at nodes {at_nodes:.2e}, det identity {det_rel:.2e}, leading {lead_rel:.2e}")


def test_criterion_7_node_bounds():
    failures = [cfg for cfg in sweep_configs() if not check_bounds(solve_grid(cfg))]
    _record(7, not failures, f"{len(failures)} grids violate the brackets or gap bounds")


def test_criterion_8_askey_wilson():
    al = (0.2, 0.2, 0.2, 0.2)
    fam = validate_family(1, 1, al)
    cfg = validate_pair(fam, fam, 6)
    fp = gram_schmidt_low(fam)
    prod = math.prod(al)
    d0 = (1 - prod) / math.prod(1 - a * b for a, b in itertools.combinations(al, 2))
    d1 = 1 / (1 - prod)
    expected = {
        "Delta_0": d0,
        "Delta_1": d1,
        "a_1": math.sqrt(d1 / d0),
        "a_2": d1 ** -0.5,
        "b_0": (d1 - 1) * sum(1 / a for a in al) - d1 * sum(al),
        "b_1": (d1 - 1) * sum(a - 1 / a for a in al),
    }
    got = {
        "Delta_0": fp.norm(0), "Delta_1": fp.norm(1), "a_1": fp.a_coef(1), "a_2": fp.a_coef(2),
        "b_0": fp.b_coef(0), "b_1": fp.b_coef(1),
    }
    worst = max(abs(got[k] - v) for k, v in expected.items())
    orth = max(gram_residuals(build_basis(cfg)))
    _record(8, worst < 1e-10 and orth < 1e-10, f"max closed-form mismatch {worst:.2e}, orthogonality {orth:.2e}")


def test_criterion_9_expansion():
    worst, checked = 0.0, 0
    configs = sweep_configs() + [
        validate_pair(validate_family(1, 0, [0.3, 0.5]), validate_family(1, 1, [-0.4]), 9),
        validate_pair(validate_family(0, 0, [0.6]), validate_family(0, 1, [[0.2, 0.5], [0.2, -0.5]]), 12),
    ]
    for cfg in configs:
        res = charpoly_expansion_check(cfg)
        if res is None:
            continue
        checked += 1
        worst = max(worst, res[0])
    _record(9, checked > 0 and worst < 1e-8, f"{checked} eligible configs, max coefficient error {worst:.2e}")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
