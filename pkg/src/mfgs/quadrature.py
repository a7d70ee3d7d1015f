"""Quadrature oracles for the bath kernels, independent of the digamma closed forms.

Every routine integrates the spectral density directly against a thermal
kernel with adaptive Gauss-Kronrod (QUADPACK via scipy). The imaginary-time
integrals defining ``G``, ``G'`` and ``g`` are done analytically inside the
frequency integrand, so each oracle is a single one-dimensional quadrature.
The ``*_nested`` variants instead integrate ``c_B(u)`` over imaginary time
and are much slower.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

from .bath import (
    SingleMode,
    SpectralDensity,
    _J_slope,
    correlation_function_quadrature,
    evaluate_J,
    integrate_positive_axis,
    integration_breakpoints,
    reorganization_energy_quadrature,
)
from .errors import QuadratureError
from .specialfn import thermal_occupation

_SERIES_RADIUS = 0.5
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)
_GL_NODES = 0.5 * (_GL_NODES + 1.0)
_GL_WEIGHTS = 0.5 * _GL_WEIGHTS


def _occupation(w: float, beta: float) -> float:
    return thermal_occupation(w, beta) if w * beta < 745.0 else 0.0


def _phi1(y: float) -> float:
    """``int_0^1 e^{y v} dv``."""
    if abs(y) < _SERIES_RADIUS:
        term, total, k = 1.0, 1.0, 1
        while abs(term) > 1e-18:
            term *= y / (k + 1)
            total += term
            k += 1
        return total
    return math.expm1(y) / y


def _phi2(y: float) -> float:
    """``int_0^1 v e^{y v} dv``."""
    if abs(y) < _SERIES_RADIUS:
        # sum_k y^k / (k! (k + 2))
        fact, total, k = 1.0, 0.5, 0
        while True:
            k += 1
            fact *= y / k
            term = fact / (k + 2)
            total += term
            if abs(term) < 1e-18:
                return total
    return ((y - 1.0) * math.exp(y) + 1.0) / (y * y)


def C_quadrature(J: SpectralDensity, nu: float, beta: float) -> float:
    """Principal value ``C(nu) = PV int J(w) (w + nu coth(w beta/2)) / (beta (w^2 - nu^2)) dw``.

    The pole at ``w = |nu|`` is removed by subtracting the residue numerator
    over the symmetric interval ``[0, 2|nu|]``, whose principal value of
    ``1/(w - |nu|)`` vanishes.
    """
    if isinstance(J, SingleMode):
        n = thermal_occupation(J.Omega, beta)
        return J.lam**2 / beta * ((n + 1.0) / (J.Omega - nu) - n / (J.Omega + nu))
    slope = _J_slope(J)
    pts = integration_breakpoints(J)
    if nu == 0.0:
        return reorganization_energy_quadrature(J) / beta
    a = abs(nu)

    def h(w: float) -> float:
        # J (w + nu coth) / (beta (w + |nu|)), regular at w = 0
        if w == 0.0:
            return slope * 2.0 * nu / (beta * beta * a)
        y = 0.5 * w * beta
        coth = 1.0 / math.tanh(y) if y < 350.0 else 1.0
        return evaluate_J(J, w) * (w + nu * coth) / (beta * (w + a))

    ha = h(a)

    def near(w: float) -> float:
        if w == a:
            return 0.0
        return (h(w) - ha) / (w - a)

    inner = [p for p in pts if p < 2 * a]
    res = quad(near, 0.0, 2 * a, points=[a, *inner] if inner else [a], epsabs=0.0,
               epsrel=1e-12, limit=500, full_output=1)
    if len(res) > 3:
        raise QuadratureError(f"principal-value core did not converge: {res[3]}")
    outer_pts = [p for p in pts if p > 2 * a]
    edges = [2 * a, *outer_pts, math.inf]
    tail = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        r = quad(lambda w: h(w) / (w - a), lo, hi, epsabs=0.0, epsrel=1e-12, limit=500,
                 full_output=1)
        if len(r) > 3:
            raise QuadratureError(f"principal-value tail did not converge: {r[3]}")
        tail += r[0]
    return res[0] + tail


def Cprime_quadrature(J: SpectralDensity, nu: float, beta: float, step: float | None = None) -> float:
    """``dC/dnu`` by a five-point central difference of :func:`C_quadrature`."""
    h = step if step is not None else 1e-3 * max(1.0, abs(nu))
    f = [C_quadrature(J, nu + k * h, beta) for k in (-2, -1, 1, 2)]
    return (f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * h)


def G_quadrature(J: SpectralDensity, nu: float, beta: float) -> float:
    """``G(nu) = int_0^1 e^{-nu beta u} c_B(u beta) du`` with the ``u`` integral done analytically."""
    if isinstance(J, SingleMode):
        n = thermal_occupation(J.Omega, beta)
        return J.lam**2 * _G_weight(J.Omega, n, nu, beta)
    slope = _J_slope(J)

    def integrand(w: float) -> float:
        if w == 0.0:
            return slope * 2.0 / beta * _phi1(-nu * beta)
        return evaluate_J(J, w) * _G_weight(w, _occupation(w, beta), nu, beta)

    return integrate_positive_axis(integrand, integration_breakpoints(J))


def _G_weight(w: float, n: float, nu: float, beta: float) -> float:
    # (n+1) phi1(-(nu+w) beta) + n phi1((w-nu) beta), stable for large w
    y = (w - nu) * beta
    if abs(y) < 1.0:
        second = n * _phi1(y)
    else:
        second = ((n + 1.0) * math.exp(-nu * beta) - n) / y
    return (n + 1.0) * _phi1(-(nu + w) * beta) + second


def Gprime_quadrature(J: SpectralDensity, nu: float, beta: float) -> float:
    """``dG/dnu = -beta int_0^1 u e^{-nu beta u} c_B(u beta) du``, analytic in ``u``."""
    if isinstance(J, SingleMode):
        n = thermal_occupation(J.Omega, beta)
        return -beta * J.lam**2 * _Gp_weight(J.Omega, n, nu, beta)
    slope = _J_slope(J)

    def integrand(w: float) -> float:
        if w == 0.0:
            return slope * 2.0 / beta * _phi2(-nu * beta)
        return evaluate_J(J, w) * _Gp_weight(w, _occupation(w, beta), nu, beta)

    return -beta * integrate_positive_axis(integrand, integration_breakpoints(J))


def _Gp_weight(w: float, n: float, nu: float, beta: float) -> float:
    y = (w - nu) * beta
    if abs(y) < 1.0:
        second = n * _phi2(y)
    else:
        # n ((y-1) e^y + 1)/y^2 with n e^{w beta} = n + 1
        second = ((y - 1.0) * (n + 1.0) * math.exp(-nu * beta) + n) / (y * y)
    return (n + 1.0) * _phi2(-(nu + w) * beta) + second


def _phi_beta(c: float, beta: float) -> float:
    """``int_0^beta e^{c s} ds``."""
    return beta * _phi1(c * beta)


def _phi_divided(p: float, q: float, beta: float, scale: float, large_q=None) -> float:
    """``scale * (Phi(q) - Phi(p))/(q - p)`` with ``Phi(c) = int_0^beta e^{c s} ds``.

    ``large_q`` supplies ``scale * Phi(q)`` when that product must be formed
    analytically to avoid overflow.
    """
    d = q - p
    if abs(d) * beta < 1.0:
        # Phi[p, q] = int_0^1 Phi'(p + t d) dt, Phi'(c) = beta^2 phi2(c beta)
        vals = [_phi2((p + t * d) * beta) for t in _GL_NODES]
        return scale * beta * beta * float(np.dot(_GL_WEIGHTS, vals))
    top = large_q if large_q is not None else scale * _phi_beta(q, beta)
    return (top - scale * _phi_beta(p, beta)) / d


def g_quadrature(J: SpectralDensity, nu: float, nu_prime: float, beta: float) -> float:
    """``g(nu, nu') = int_0^beta du1 int_0^u1 du2 e^{-nu u1 + nu' u2} c_B(u1 - u2)``.

    Both imaginary-time integrals are done analytically for each bath
    frequency; the result is ``int J(w) [(n+1) Phi[a, -(nu+w)] + n Phi[a, w-nu]] dw``
    with ``a = nu' - nu`` and ``Phi[.,.]`` a divided difference.
    """
    a = nu_prime - nu

    def weight(w: float, n: float) -> float:
        first = _phi_divided(a, -(nu + w), beta, n + 1.0)
        q = w - nu
        large = None
        if q * beta > 30.0:
            large = ((n + 1.0) * math.exp(-nu * beta) - n) / q
        second = _phi_divided(a, q, beta, n, large)
        return first + second

    if isinstance(J, SingleMode):
        return J.lam**2 * weight(J.Omega, thermal_occupation(J.Omega, beta))
    slope = _J_slope(J)

    def integrand(w: float) -> float:
        if w == 0.0:
            # n ~ 1/(w beta): J n -> slope / beta, both occupation terms alike
            return 2.0 * slope / beta * _phi_divided(a, -nu, beta, 1.0)
        return evaluate_J(J, w) * weight(w, _occupation(w, beta))

    return integrate_positive_axis(integrand, integration_breakpoints(J))


def G_nested_quadrature(J: SpectralDensity, nu: float, beta: float) -> float:
    """``G`` by quadrature over ``u`` of the quadrature correlation ``c_B``; slow."""
    res = quad(
        lambda u: math.exp(-nu * beta * u) * correlation_function_quadrature(J, u * beta, beta),
        0.0, 1.0, epsabs=0.0, epsrel=1e-10, limit=200, full_output=1,
    )
    if len(res) > 3:
        raise QuadratureError(f"nested G quadrature did not converge: {res[3]}")
    return res[0]


def g_nested_quadrature(J: SpectralDensity, nu: float, nu_prime: float, beta: float) -> float:
    """``g`` from the double imaginary-time integral of the quadrature ``c_B``; slow.

    The square ``0 <= u2 <= u1 <= beta`` is reduced to the lag ``s = u1 - u2``
    with the remaining integral over ``u1`` done analytically.
    """
    a = nu_prime - nu

    def lag_weight(s: float) -> float:
        # e^{-nu' s} int_s^beta e^{a u} du
        return math.exp(-nu_prime * s) * (beta - s) * math.exp(a * s) * _phi1(a * (beta - s))

    res = quad(
        lambda s: lag_weight(s) * correlation_function_quadrature(J, s, beta),
        0.0, beta, epsabs=0.0, epsrel=1e-10, limit=200, full_output=1,
    )
    if len(res) > 3:
        raise QuadratureError(f"nested g quadrature did not converge: {res[3]}")
    return res[0]
