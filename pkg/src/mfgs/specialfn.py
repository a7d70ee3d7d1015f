"""Complex digamma/trigamma and overflow-safe hyperbolic helpers."""

from __future__ import annotations

import math

from ._backend import kernels
from .errors import PoleError, SingularityError

POLE_TOLERANCE = 1e-12
SATURATION = 350.0
_SERIES_CUTOFF = 1e-4


def _check_pole(z: complex) -> None:
    n = round(z.real)
    if n <= 0 and abs(z - n) < POLE_TOLERANCE:
        raise PoleError(f"argument {z} is within {POLE_TOLERANCE} of the pole at {n}")


def digamma(z: complex) -> complex:
    """Digamma function Psi(z) for complex ``z``.

    Reflection for Re z < 0.5, upward recurrence to Re z > 30, then an
    eight-term Bernoulli asymptotic series.

    Raises
    ------
    PoleError
        If ``z`` lies within 1e-12 of a non-positive integer.
    """
    z = complex(z)
    _check_pole(z)
    return complex(kernels.digamma(z))


def trigamma(z: complex) -> complex:
    """Trigamma function Psi'(z) for complex ``z``; same algorithm and poles as :func:`digamma`."""
    z = complex(z)
    _check_pole(z)
    return complex(kernels.trigamma(z))


def coth_and_derivative(x: float) -> tuple[float, float]:
    """Return ``(coth x, -1/sinh^2 x)``, saturating to ``(sign x, 0)`` for |x| > 350."""
    x = float(x)
    if abs(x) < 1e-300:
        raise SingularityError("coth is singular at x = 0")
    if abs(x) > SATURATION:
        return math.copysign(1.0, x), 0.0
    s = math.sinh(x)
    return math.cosh(x) / s, -1.0 / (s * s)


def x_coth_x(y: float) -> float:
    """``y coth y``, regular at y = 0 (value 1)."""
    ay = abs(y)
    if ay < _SERIES_CUTOFF:
        return 1.0 + y * y / 3.0
    if ay > SATURATION:
        return ay
    return y / math.tanh(y)


def x2_coth_prime(y: float) -> float:
    """``y^2 coth'(y) = -y^2/sinh^2 y``, regular at y = 0 (value -1)."""
    ay = abs(y)
    if ay < _SERIES_CUTOFF:
        return -1.0 + y * y / 3.0
    if ay > SATURATION:
        return 0.0
    ratio = y / math.sinh(y)
    return -ratio * ratio


def thermal_occupation(omega: float, beta: float) -> float:
    """Bose-Einstein occupation ``1/(exp(omega*beta) - 1)`` for omega, beta > 0."""
    if not omega > 0.0 or not beta > 0.0:
        raise ValueError("thermal_occupation requires omega > 0 and beta > 0")
    x = omega * beta
    if x > 700.0:
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def excited_thermal_population(omega: float, beta: float) -> float:
    """Upper-level weight ``e^{-omega beta}/(1 + e^{-omega beta})`` of a two-level Gibbs state."""
    x = omega * beta
    if x >= 0.0:
        e = math.exp(-x)
        return e / (1.0 + e)
    return 1.0 / (1.0 + math.exp(x))
