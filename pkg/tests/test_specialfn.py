import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfgs.errors import PoleError, SingularityError
from mfgs.specialfn import (
    coth_and_derivative,
    digamma,
    excited_thermal_population,
    thermal_occupation,
    trigamma,
    x2_coth_prime,
    x_coth_x,
)

EULER = 0.5772156649015329


def test_digamma_special_values():
    assert digamma(1) == pytest.approx(-EULER, rel=1e-15)
    assert digamma(2) == pytest.approx(1 - EULER, rel=1e-15)


def test_trigamma_special_values():
    assert trigamma(1) == pytest.approx(math.pi**2 / 6, rel=1e-15)
    assert trigamma(2) == pytest.approx(math.pi**2 / 6 - 1, rel=1e-14)


def test_frozen_complex_values():
    # 30-digit mpmath values
    psi = -0.328886357229459350343858671084 + 0.712688574959647755609169086586j
    psi1 = 0.463000096622763786298326518184 - 0.794233542759318865583013617157j
    assert abs(digamma(1 + 0.5j) - psi) < 4e-15 * abs(psi)
    assert abs(trigamma(1 + 1j) - psi1) < 4e-15 * abs(psi1)


@pytest.mark.parametrize(
    "z", [0.3, 1 + 0.5j, -2.5 + 0.1j, 0.3 - 4j, 40 + 100j, -100.3 + 2j, 700 - 700j, -0.5 + 300j, 1e-3j]
)
def test_against_mpmath(z):
    ref = complex(mpmath.digamma(z))
    assert abs(digamma(z) - ref) <= 1e-12 * abs(ref)
    ref1 = complex(mpmath.psi(1, z))
    assert abs(trigamma(z) - ref1) <= 1e-12 * abs(ref1)


@pytest.mark.parametrize("z", [0, -1, -7, -3 + 1e-13, 1e-13j])
def test_pole_proximity_raises(z):
    with pytest.raises(PoleError):
        digamma(z)
    with pytest.raises(PoleError):
        trigamma(z)


def test_recurrence_property():
    rng = np.random.default_rng(1)
    zs = rng.uniform(0.5, 50, 10_000) + 1j * rng.uniform(-50, 50, 10_000)
    worst = max(abs(digamma(z + 1) - digamma(z) - 1 / z) / abs(1 / z) for z in zs)
    assert worst < 1e-12


@settings(max_examples=200, deadline=None)
@given(
    st.floats(-60, 60, allow_nan=False).filter(lambda x: abs(x - round(x)) > 1e-6 or x > 0.5),
    st.floats(-60, 60, allow_nan=False),
)
def test_conjugation_symmetry(x, y):
    z = complex(x, y)
    for f in (digamma, trigamma):
        a, b = f(z.conjugate()), f(z).conjugate()
        assert abs(a - b) <= 1e-14 * abs(b)


@pytest.mark.parametrize("z", [1.0, 1 + 0.5j, 3 - 2j, -1.5 + 0.7j, 12 + 30j])
def test_trigamma_is_derivative_of_digamma(z):
    h = 1e-5
    fd = (digamma(z + h) - digamma(z - h)) / (2 * h)
    assert abs(fd - trigamma(z)) <= 1e-6 * abs(trigamma(z))


def test_coth_values():
    c, d = coth_and_derivative(math.log(3))
    assert c == pytest.approx(1.25, rel=1e-15)
    c, d = coth_and_derivative(0.5)
    assert c == pytest.approx(2.16395341373865284877000401022, rel=1e-15)
    assert d == pytest.approx(-3.68269437683116927578165409087, rel=1e-15)
    assert coth_and_derivative(400.0) == (1.0, 0.0)
    assert coth_and_derivative(-1e4) == (-1.0, 0.0)
    with pytest.raises(SingularityError):
        coth_and_derivative(0.0)


def test_regular_coth_helpers_continuous_at_zero():
    for y in (1e-5, 1e-4 * (1 - 1e-12), 1e-4 * (1 + 1e-12), 0.3):
        assert x_coth_x(y) == pytest.approx(y / math.tanh(y), rel=1e-14)
        assert x2_coth_prime(y) == pytest.approx(-(y / math.sinh(y)) ** 2, rel=1e-13)
    assert x_coth_x(0.0) == 1.0
    assert x2_coth_prime(0.0) == -1.0
    assert x_coth_x(1e3) == 1e3
    assert x2_coth_prime(1e3) == 0.0


def test_thermal_occupation():
    assert thermal_occupation(math.log(2), 1.0) == pytest.approx(1.0, rel=1e-15)
    assert thermal_occupation(20.0, 1.0) == pytest.approx(2.06115362668691209201404015623e-9, rel=1e-14)
    for x in (1e-6, 1e-9):
        assert thermal_occupation(x, 1.0) * x == pytest.approx(1.0, rel=x)
    assert thermal_occupation(1.0, 1e4) == 0.0
    for w, b in [(0.3, 2.0), (1.0, 1.0), (5.0, 3.0)]:
        n = thermal_occupation(w, b)
        assert math.exp(w * b) * n == pytest.approx(n + 1, rel=1e-12)
    with pytest.raises(ValueError):
        thermal_occupation(0.0, 1.0)


def test_excited_population_extremes():
    assert excited_thermal_population(1.0, 0.0) == 0.5
    assert excited_thermal_population(1.0, 1e4) == 0.0
    assert excited_thermal_population(1.0, 2.0) == pytest.approx(math.exp(-2) / (1 + math.exp(-2)), rel=1e-15)
