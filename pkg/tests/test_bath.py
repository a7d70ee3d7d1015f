import math

import numpy as np
import pytest

from mfgs.bath import (
    OverDamped,
    SingleMode,
    UnderDamped,
    correlation_function_quadrature,
    evaluate_J,
    evaluate_J_overdamped_complex,
    reorganization_energy,
    reorganization_energy_quadrature,
    ud_to_od_pair,
)
from mfgs.errors import QuadratureError

DENSITIES = [
    UnderDamped(0.5, 10.0, 0.1),
    UnderDamped(0.5, 10.0, 1.0),
    UnderDamped(0.5, 10.0, 5.0),
    UnderDamped(1.5, 1.0, 20.0),
    OverDamped(0.1, 2.0),
    OverDamped(0.05, 10.0),
]


def test_underdamped_pointwise():
    J = UnderDamped(0.5, 10.0, 0.1)
    assert evaluate_J(J, 0.0) == 0.0
    # at the peak (Omega^2 - w^2) vanishes
    assert evaluate_J(J, 10.0) == pytest.approx(2 / math.pi * 0.25 / (0.1 * 10), rel=1e-15)


def test_overdamped_pointwise():
    J = OverDamped(0.1, 2.0)
    assert evaluate_J(J, 2.0) == pytest.approx(0.1, rel=1e-15)
    w = np.array([0.0, 1.0, 4.0])
    assert np.allclose(evaluate_J(J, w), 0.1 * w * 4 / (4 + w * w), rtol=1e-15)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        evaluate_J(OverDamped(0.1, 2.0), -1.0)
    with pytest.raises(ValueError):
        evaluate_J(SingleMode(1.0, 1.0), 1.0)
    with pytest.raises(ValueError):
        UnderDamped(0.5, -1.0, 0.1)
    with pytest.raises(ValueError):
        OverDamped(0.1, 0.0)


@pytest.mark.parametrize("J", DENSITIES, ids=repr)
def test_reorganization_energy_matches_quadrature(J):
    assert reorganization_energy_quadrature(J) == pytest.approx(reorganization_energy(J), rel=1e-10)


def test_reorganization_energy_closed_forms():
    assert reorganization_energy(UnderDamped(0.5, 10.0, 0.1)) == pytest.approx(0.025, rel=1e-15)
    assert reorganization_energy(OverDamped(0.1, 2.0)) == pytest.approx(0.1 * math.pi, rel=1e-15)
    assert reorganization_energy(SingleMode(2.0, 4.0)) == 1.0


def test_mode_parametrization_keeps_reorganization_energy():
    J = OverDamped.from_mode(1.0, 10.0, 20.0)
    assert J.omega_c == 0.5
    assert reorganization_energy(J) == pytest.approx(0.1, rel=1e-15)


@pytest.mark.parametrize("gamma", [0.1, 1.0, 1.999, 2.0002, 5.0, 50.0])
def test_two_pole_split_reproduces_density(gamma):
    J = UnderDamped(0.7, 3.0, gamma)
    pair = ud_to_od_pair(J)
    assert not pair.degenerate
    w = np.linspace(0.0, 60.0, 301)
    rebuilt = evaluate_J_overdamped_complex(pair.alpha_minus, pair.omega_minus_sq, w) - (
        evaluate_J_overdamped_complex(pair.alpha_plus, pair.omega_plus_sq, w)
    )
    ref = evaluate_J(J, w)
    scale = ref.max()
    assert np.abs(rebuilt - ref).max() <= 1e-10 * scale
    assert np.abs(rebuilt.imag).max() <= 1e-10 * scale


@pytest.mark.parametrize("gamma", [0.1, 1.0, 5.0, 50.0])
def test_two_pole_frequency_identities(gamma):
    Omega = 3.0
    pair = ud_to_od_pair(UnderDamped(0.7, Omega, gamma))
    w_minus = np.sqrt(pair.omega_minus_sq)
    w_plus = np.sqrt(pair.omega_plus_sq)
    assert abs(w_minus * w_plus - Omega**2) < 1e-12 * Omega**2
    assert abs(w_minus + w_plus - Omega * gamma) < 1e-12 * Omega * max(gamma, 2.0)


def test_critical_damping_is_degenerate():
    assert ud_to_od_pair(UnderDamped(0.7, 3.0, 2.0 + 5e-5)).degenerate


@pytest.mark.parametrize("J", DENSITIES[:4] + [SingleMode(0.5, 3.0)], ids=repr)
def test_correlation_symmetric_and_positive(J):
    beta = 0.8
    for u in (0.0, 0.1, 0.3):
        a = correlation_function_quadrature(J, u, beta)
        b = correlation_function_quadrature(J, beta - u, beta)
        assert a > 0.0
        assert a == pytest.approx(b, rel=1e-10)


def test_correlation_frozen_value():
    val = correlation_function_quadrature(UnderDamped(0.5, 10.0, 0.1), 0.25, 0.5)
    assert val == pytest.approx(0.044238880026824509373195313572, rel=1e-10)


def test_overdamped_correlation_endpoint_divergence():
    with pytest.raises(QuadratureError):
        correlation_function_quadrature(OverDamped(0.1, 2.0), 0.0, 1.0)
    with pytest.raises(ValueError):
        correlation_function_quadrature(OverDamped(0.1, 2.0), 2.0, 1.0)
