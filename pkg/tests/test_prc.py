import math

import mpmath
import numpy as np
import pytest

from mfgs.bath import SingleMode
from mfgs.errors import ResonanceError
from mfgs.mfgs_pe import QubitParams, pe_steady_state
from mfgs.prc import prc_kernels, prc_steady_state

mpmath.mp.dps = 30


def _mp_G(lam, Omega, beta, nu):
    """``int_0^1 e^{-nu beta u} c_B(u beta) du`` for one mode, integrated by hand."""
    n = 1 / mpmath.expm1(Omega * beta)
    a = (1 - mpmath.exp(-(nu + Omega) * beta)) / ((nu + Omega) * beta)
    b = mpmath.expm1((Omega - nu) * beta) / ((Omega - nu) * beta)
    return lam**2 * ((n + 1) * a + n * b)


def _mp_state(q, lam, Omega, beta):
    w = mpmath.mpf(q.omega_s)
    lam, Omega, beta = mpmath.mpf(lam), mpmath.mpf(Omega), mpmath.mpf(beta)
    G = _mp_G(lam, Omega, beta, w)
    Gp = mpmath.diff(lambda x: _mp_G(lam, Omega, beta, x), w)
    Q = lam**2 / Omega
    r2 = mpmath.mpf(q.r_x) ** 2 + mpmath.mpf(q.r_y) ** 2
    rz = mpmath.mpf(q.r_z)
    x = mpmath.exp(-beta * w)
    D = (1 + x) * (1 + rz**2 * beta * Q) + r2 * beta**2 * G
    p_e = (x * (1 + rz**2 * beta * Q) - r2 * beta * Gp) / D
    c = -2 * mpmath.mpc(q.r_x, q.r_y) * rz * (beta / w) * (G - (1 + x) * Q / beta) / D
    return complex(p_e).real, complex(c)


def _random_sets(count, seed):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        Omega = float(rng.uniform(0.2, 20.0))
        if abs(Omega - 1.0) < 0.05:
            continue
        theta = rng.uniform(0.05, math.pi - 0.05)
        phi = rng.uniform(0, 2 * math.pi)
        q = QubitParams(
            1.0, math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)
        )
        out.append((q, float(rng.uniform(0.0, 2.0)), Omega, float(rng.uniform(0.1, 10.0))))
    return out


def test_prc_is_pe_on_single_mode():
    for q, lam, Omega, beta in _random_sets(100, 3):
        a = prc_steady_state(q, lam, Omega, beta)
        b = pe_steady_state(SingleMode(lam, Omega), q, beta)
        assert abs(a.p_e - b.p_e) <= 1e-12 * max(1.0, abs(b.p_e))
        assert abs(a.c_ge - b.c_ge) <= 1e-12 * max(1.0, abs(b.c_ge))


@pytest.mark.parametrize("case", range(20))
def test_prc_against_high_precision_oracle(case):
    q, lam, Omega, beta = _random_sets(20, 4)[case]
    s = prc_steady_state(q, lam, Omega, beta)
    p_e, c = _mp_state(q, lam, Omega, beta)
    assert abs(s.p_e - p_e) <= 1e-11 * max(1.0, abs(p_e))
    assert abs(s.c_ge - c) <= 1e-11 * max(1.0, abs(c))


def test_resonance_excluded():
    with pytest.raises(ResonanceError):
        prc_steady_state(QubitParams.from_tilt(1.0, 0.5), 0.5, 1.0, 1.0)
    with pytest.raises(ResonanceError):
        prc_kernels(0.5, 2.0, -2.0, 1.0)
    prc_kernels(0.5, 1.0 + 1e-6, 1.0, 1.0)
