import math

import numpy as np
import pytest
from hypothesis import settings

from bsquad.params import validate_family, validate_pair

settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")

SWEEP_SEED = 20240611
SWEEP_SIZE = 60

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def random_alphas(rng, d, rmax=0.8):
    """``d`` parameters with modulus at most ``rmax``: real ones plus conjugate pairs."""
    out = []
    while len(out) < d:
        if d - len(out) >= 2 and rng.random() < 0.4:
            r = rng.uniform(0.05, rmax)
            th = rng.uniform(0.1, math.pi - 0.1)
            a = complex(r * math.cos(th), r * math.sin(th))
            out += [[a.real, a.imag], [a.real, -a.imag]]
        else:
            x = rng.uniform(-rmax, rmax)
            out.append(x if x != 0 else 0.1)
    return out


def random_family(rng, dmax=4):
    d = int(rng.integers(0, dmax + 1))
    return validate_family(int(rng.integers(0, 2)), int(rng.integers(0, 2)), random_alphas(rng, d))


def random_config(rng, mmax=32, gauss=False):
    fam = random_family(rng)
    fam_t = validate_family(1, 1, ()) if gauss else random_family(rng)
    low = fam.ceil_d_eps + fam_t.ceil_d_eps + 1
    m = int(rng.integers(max(low, 1), mmax + 1))
    return validate_pair(fam, fam_t, m)


def sweep_configs(n=SWEEP_SIZE, seed=SWEEP_SEED):
    rng = np.random.default_rng(seed)
    # every fourth config has a Gauss-kind tilde family (d~_eps~ = -1)
    configs = []
    for k in range(n):
        configs.append(random_config(rng, gauss=k % 4 == 0))
    return configs


@pytest.fixture(scope="session")
def sweep():
    return sweep_configs()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
