"""Bath spectral densities, reorganization energy and imaginary-time correlation.

All energies are in units of the qubit splitting and inverse temperatures in
its inverse.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.integrate import quad

from .errors import QuadratureError
from .specialfn import thermal_occupation

# |gamma - 2| below this is treated as the critically damped point where the
# two-pole decomposition of the under-damped density degenerates
CRITICAL_DAMPING_WINDOW = 1e-4


@dataclass(frozen=True)
class UnderDamped:
    """Peaked density ``(2/pi) gamma Omega^2 lam^2 w / ((Omega^2 - w^2)^2 + (gamma Omega w)^2)``."""

    lam: float
    Omega: float
    gamma: float

    def __post_init__(self) -> None:
        if not (self.lam >= 0.0 and self.Omega > 0.0 and self.gamma > 0.0):
            raise ValueError("UnderDamped requires lam >= 0, Omega > 0, gamma > 0")


@dataclass(frozen=True)
class OverDamped:
    """Lorentz-Drude density ``alpha w omega_c^2 / (omega_c^2 + w^2)``."""

    alpha: float
    omega_c: float

    def __post_init__(self) -> None:
        if not (self.alpha >= 0.0 and self.omega_c > 0.0):
            raise ValueError("OverDamped requires alpha >= 0 and omega_c > 0")

    @classmethod
    def from_mode(cls, lam: float, Omega: float, gamma: float) -> "OverDamped":
        """Over-damped density whose mapped mode has coupling ``lam`` and frequency ``Omega``.

        ``alpha = 2 gamma lam^2 / (pi Omega^2)`` and ``omega_c = Omega / gamma``,
        which keeps the reorganization energy at ``lam^2 / Omega``.
        """
        return cls(2.0 * gamma * lam * lam / (math.pi * Omega * Omega), Omega / gamma)


@dataclass(frozen=True)
class SingleMode:
    """Delta density ``lam^2 delta(w - Omega)``."""

    lam: float
    Omega: float

    def __post_init__(self) -> None:
        if not (self.lam >= 0.0 and self.Omega > 0.0):
            raise ValueError("SingleMode requires lam >= 0 and Omega > 0")


SpectralDensity = Union[UnderDamped, OverDamped, SingleMode]


@dataclass(frozen=True)
class OdPair:
    """Two complex over-damped densities whose difference is an under-damped one.

    ``alpha_minus``/``alpha_plus`` are ``None`` at critical damping, where the
    decomposition is singular.
    """

    omega_minus_sq: complex
    omega_plus_sq: complex
    alpha_minus: complex | None
    alpha_plus: complex | None

    @property
    def degenerate(self) -> bool:
        return self.alpha_minus is None


def evaluate_J(J: SpectralDensity, omega):
    """Pointwise spectral density; accepts scalars or arrays with ``omega >= 0``."""
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0.0):
        raise ValueError("spectral density is defined for omega >= 0")
    if isinstance(J, UnderDamped):
        om2 = J.Omega * J.Omega
        den = (om2 - w * w) ** 2 + (J.gamma * J.Omega * w) ** 2
        out = (2.0 / math.pi) * J.gamma * om2 * J.lam * J.lam * w / den
    elif isinstance(J, OverDamped):
        wc2 = J.omega_c * J.omega_c
        out = J.alpha * w * wc2 / (wc2 + w * w)
    elif isinstance(J, SingleMode):
        raise ValueError("a delta density has no pointwise value")
    else:
        raise TypeError(f"unknown spectral density {J!r}")
    return float(out) if np.ndim(out) == 0 else out


def reorganization_energy(J: SpectralDensity) -> float:
    """``Q = int_0^inf J(w)/w dw`` in closed form."""
    if isinstance(J, (UnderDamped, SingleMode)):
        return J.lam * J.lam / J.Omega
    if isinstance(J, OverDamped):
        return 0.5 * math.pi * J.alpha * J.omega_c
    raise TypeError(f"unknown spectral density {J!r}")


def ud_to_od_pair(J: UnderDamped) -> OdPair:
    """Split an under-damped density into ``J_OD(alpha_-, w_-) - J_OD(alpha_+, w_+)``.

    ``w_pm^2 = Omega^2 (gamma^2/2 - 1 pm gamma s)`` with ``s = sqrt(gamma^2/4 - 1)``
    (imaginary below critical damping, giving a conjugate pair).
    """
    g = J.gamma
    om2 = J.Omega * J.Omega
    if abs(g - 2.0) < CRITICAL_DAMPING_WINDOW:
        return OdPair(complex(om2), complex(om2), None, None)
    s = cmath.sqrt(g * g / 4.0 - 1.0)
    a_plus = g * g / 2.0 - 1.0 + g * s
    if g > 2.0:
        # a_+ a_- = 1; avoid the cancellation in a_- for large gamma
        a_minus = 1.0 / a_plus
    else:
        a_minus = g * g / 2.0 - 1.0 - g * s
    scale = J.lam * J.lam / (math.pi * om2)
    return OdPair(
        omega_minus_sq=om2 * a_minus,
        omega_plus_sq=om2 * a_plus,
        alpha_minus=scale / (a_minus * s),
        alpha_plus=scale / (a_plus * s),
    )


def evaluate_J_overdamped_complex(alpha: complex, omega_c_sq: complex, omega):
    """Over-damped density with complex parameters, as used by the two-pole split."""
    w = np.asarray(omega, dtype=float)
    return alpha * w * omega_c_sq / (omega_c_sq + w * w)


def integration_breakpoints(J: SpectralDensity) -> list[float]:
    """Finite breakpoints splitting ``[0, inf)`` around the spectral features of ``J``."""
    if isinstance(J, UnderDamped):
        width = max(J.gamma, 1e-3) * J.Omega
        pts = [J.Omega - 8 * width, J.Omega - width, J.Omega, J.Omega + width, J.Omega + 8 * width]
        return sorted({p for p in pts if p > 0.0})
    if isinstance(J, OverDamped):
        return [J.omega_c, 10.0 * J.omega_c]
    return []


def integrate_positive_axis(f, breakpoints, epsrel: float = 1e-12, limit: int = 500) -> float:
    """Adaptive Gauss-Kronrod integral of ``f`` over ``[0, inf)`` split at ``breakpoints``.

    Raises
    ------
    QuadratureError
        If any sub-interval does not converge within the subdivision budget.
    """
    edges = [0.0, *breakpoints, math.inf]
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        res = quad(f, lo, hi, epsabs=0.0, epsrel=epsrel, limit=limit, full_output=1)
        if len(res) > 3:
            raise QuadratureError(f"quadrature on [{lo}, {hi}] did not converge: {res[3]}")
        total += res[0]
    return total


def reorganization_energy_quadrature(J: SpectralDensity) -> float:
    """``Q`` by quadrature of ``J(w)/w``; independent check of the closed form."""
    if isinstance(J, SingleMode):
        return reorganization_energy(J)
    return integrate_positive_axis(
        lambda w: evaluate_J(J, w) / w if w > 0.0 else _J_slope(J), integration_breakpoints(J)
    )


def _J_slope(J: SpectralDensity) -> float:
    """``lim_{w -> 0} J(w)/w``."""
    if isinstance(J, UnderDamped):
        return (2.0 / math.pi) * J.gamma * J.lam * J.lam / (J.Omega * J.Omega)
    if isinstance(J, OverDamped):
        return J.alpha
    raise ValueError("a delta density has no slope")


def correlation_kernel(omega: float, u: float, beta: float) -> float:
    """``e^{-w u}(n_w + 1) + e^{w u} n_w`` in an overflow-free form, ``0 <= u <= beta``."""
    return (math.exp(-omega * u) + math.exp(-omega * (beta - u))) / -math.expm1(-omega * beta)


def correlation_function_quadrature(J: SpectralDensity, u: float, beta: float) -> float:
    """Imaginary-time bath correlation ``c_B(u)`` for ``0 <= u <= beta``.

    Continuous densities are integrated with adaptive Gauss-Kronrod to 1e-11
    relative; the delta density is evaluated exactly.

    Raises
    ------
    QuadratureError
        On non-convergence, including the logarithmic divergence of the
        over-damped correlation at ``u = 0`` and ``u = beta``.
    """
    if not beta > 0.0 or not 0.0 <= u <= beta:
        raise ValueError("correlation function requires beta > 0 and 0 <= u <= beta")
    if isinstance(J, SingleMode):
        n = thermal_occupation(J.Omega, beta)
        return J.lam * J.lam * (math.exp(-J.Omega * u) * (n + 1.0) + math.exp(J.Omega * u) * n)
    if isinstance(J, OverDamped) and (u == 0.0 or u == beta):
        raise QuadratureError("over-damped correlation diverges at u = 0 and u = beta")
    slope = _J_slope(J)

    def integrand(w: float) -> float:
        if w == 0.0:
            return 2.0 * slope / beta
        return evaluate_J(J, w) * correlation_kernel(w, u, beta)

    return integrate_positive_axis(integrand, integration_breakpoints(J), epsrel=1e-11)
