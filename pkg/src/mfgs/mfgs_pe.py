"""Second-order mean-force Gibbs state of a spin-boson model.

The bath enters through ``C(nu)`` (a principal-value integral of ``J``), its
derivative, and the combinations ``G(nu) = C(-nu) + e^{-beta nu} C(nu)`` and
``G'(nu) = dG/dnu``. Closed forms use the digamma function; the under-damped
density is handled as a difference of two complex over-damped densities.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .bath import (
    CRITICAL_DAMPING_WINDOW,
    OverDamped,
    SingleMode,
    SpectralDensity,
    UnderDamped,
    reorganization_energy,
    ud_to_od_pair,
)
from .errors import (
    CommutingCouplingError,
    ResidueError,
    ResonanceError,
    SingularDenominatorError,
)
from .specialfn import (
    digamma,
    excited_thermal_population,
    thermal_occupation,
    trigamma,
    x2_coth_prime,
    x_coth_x,
)

RESIDUE_TOLERANCE = 1e-10
RESONANCE_TOLERANCE = 1e-10
DIAGONAL_THRESHOLD = 1e-8
_TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# qubit data


@dataclass(frozen=True)
class QubitParams:
    """``H_S = (omega_s/2)(r_x sx + r_y sy + r_z sz)`` coupled to the bath through ``sz``."""

    omega_s: float
    r_x: float
    r_y: float
    r_z: float

    def __post_init__(self) -> None:
        if not self.omega_s > 0.0:
            raise ValueError("omega_s must be positive")
        norm = self.r_x**2 + self.r_y**2 + self.r_z**2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"(r_x, r_y, r_z) must be a unit vector, |r|^2 = {norm}")

    @classmethod
    def from_tilt(cls, omega_s: float, r: complex, r_z: float | None = None) -> "QubitParams":
        """Build from the transverse component ``r = r_x + i r_y``; ``r_z >= 0`` by default."""
        r = complex(r)
        if r_z is None:
            r_z = math.sqrt(max(0.0, 1.0 - abs(r) ** 2))
        return cls(omega_s, r.real, r.imag, r_z)

    @property
    def r(self) -> complex:
        return complex(self.r_x, self.r_y)

    @property
    def r_abs2(self) -> float:
        return self.r_x * self.r_x + self.r_y * self.r_y

    def hamiltonian(self) -> np.ndarray:
        """``H_S`` in the ``sz`` eigenbasis ``(|+>, |->)``."""
        r = self.r
        half = 0.5 * self.omega_s
        return half * np.array([[self.r_z, r.conjugate()], [r, -self.r_z]], dtype=complex)

    def eigenbasis(self) -> np.ndarray:
        """Unitary whose columns are ``|e>`` and ``|g>`` in the ``sz`` basis."""
        rz = self.r_z
        if 1.0 + rz < 1e-15:
            return np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
        r = self.r
        norm = math.sqrt(2.0 * (1.0 + rz))
        e = np.array([1.0 + rz, r]) / norm
        g = np.array([-r.conjugate(), 1.0 + rz]) / norm
        return np.column_stack([e, g])

    def thermal_excited_population(self, beta: float) -> float:
        return excited_thermal_population(self.omega_s, beta)


@dataclass(frozen=True)
class QubitState:
    """Qubit density matrix in the ``{|e>, |g>}`` basis: ``p_e`` and ``c_ge = <g|rho|e>``."""

    p_e: float
    c_ge: complex

    @property
    def p_g(self) -> float:
        return 1.0 - self.p_e

    @property
    def positivity_violated(self) -> bool:
        """True when ``p_e p_g < |c_ge|^2`` (possible for perturbative states)."""
        return self.p_e * self.p_g < abs(self.c_ge) ** 2

    def matrix(self) -> np.ndarray:
        """2x2 density matrix with rows/columns ordered ``(e, g)``."""
        c = complex(self.c_ge)
        return np.array([[self.p_e, c.conjugate()], [c, self.p_g]], dtype=complex)

    def to_sigma_z_basis(self, q: QubitParams) -> np.ndarray:
        u = q.eigenbasis()
        return u @ self.matrix() @ u.conj().T

    @classmethod
    def from_sigma_z_basis(cls, rho: np.ndarray, q: QubitParams) -> "QubitState":
        u = q.eigenbasis()
        m = u.conj().T @ rho @ u
        return cls(float(m[0, 0].real), complex(m[1, 0]))


def thermal_state(q: QubitParams, beta: float) -> QubitState:
    return QubitState(q.thermal_excited_population(beta), 0j)


# ---------------------------------------------------------------------------
# closed-form correlation functions


def _F(nu: float, beta: float, wc: complex) -> complex:
    x = nu * beta / _TWO_PI
    return (
        -(wc + 1j * nu) * beta * digamma(1.0 + 1j * x)
        - (wc - 1j * nu) * beta * digamma(1.0 - 1j * x)
        + 2.0 * wc * beta * digamma(1.0 + wc * beta / _TWO_PI)
    ) / _TWO_PI


def _F_prime(nu: float, beta: float, wc: complex) -> complex:
    x = nu * beta / _TWO_PI
    b = beta / _TWO_PI
    return b * (
        -1j * digamma(1.0 + 1j * x)
        + 1j * digamma(1.0 - 1j * x)
        + (nu - 1j * wc) * b * trigamma(1.0 + 1j * x)
        + (nu + 1j * wc) * b * trigamma(1.0 - 1j * x)
    )


def _principal_root(omega_c_sq: complex) -> complex:
    wc = cmath.sqrt(complex(omega_c_sq))
    if wc.real <= 0.0:
        # principal branch already has Re >= 0; Re = 0 means a purely imaginary cutoff
        raise ValueError(f"omega_c^2 = {omega_c_sq} has no root with positive real part")
    return wc


def C_overdamped(alpha: complex, omega_c_sq: complex, nu: float, beta: float) -> complex:
    """``C(nu)`` of the over-damped density, valid for complex ``alpha`` and ``omega_c^2``.

    ``C(nu) = PV int J(w) [(n_w + 1)/(w - nu) - n_w/(w + nu)] dw / beta``.
    """
    wc = _principal_root(omega_c_sq)
    wc2 = complex(omega_c_sq)
    nu = float(nu)
    y = 0.5 * nu * beta
    nu2_coth = nu * (2.0 / beta) * x_coth_x(y)  # nu^2 coth(nu beta/2)
    bracket = wc2 - nu2_coth
    if nu != 0.0:
        bracket += 2.0 * nu / beta * _F(nu, beta, wc)
    return math.pi / (2.0 * wc) * alpha / beta * wc2 / (wc2 + nu * nu) * bracket


def Cprime_overdamped(alpha: complex, omega_c_sq: complex, nu: float, beta: float) -> complex:
    """``dC/dnu`` of the over-damped density (same argument conventions as :func:`C_overdamped`)."""
    wc = _principal_root(omega_c_sq)
    wc2 = complex(omega_c_sq)
    nu = float(nu)
    y = 0.5 * nu * beta
    lorentz = wc2 + nu * nu
    coth_term = (2.0 / beta) * x_coth_x(y)  # nu coth(nu beta/2)
    # -2 nu wc^2 (1 + coth)/(wc^2 + nu^2), tends to -4/beta at nu = 0
    t1 = -2.0 * wc2 / lorentz * (nu + coth_term)
    t2 = -(2.0 / beta) * x2_coth_prime(y)  # -(nu^2 beta/2) coth'(nu beta/2)
    F = _F(nu, beta, wc)
    t3 = (2.0 / beta) * (wc2 - nu * nu) / lorentz * F
    t4 = 2.0 * nu / beta * _F_prime(nu, beta, wc) if nu != 0.0 else 0.0
    return math.pi / (2.0 * wc) * alpha / beta * wc2 / lorentz * (t1 + t2 + t3 + t4)


def _real_difference(minus: complex, plus: complex) -> float:
    value = minus - plus
    scale = max(abs(minus), abs(plus))
    if abs(value.imag) > RESIDUE_TOLERANCE * scale:
        raise ResidueError(
            f"imaginary residue {value.imag:.3e} exceeds {RESIDUE_TOLERANCE} of {scale:.3e}"
        )
    return value.real


def _underdamped_from_pair(J: UnderDamped, nu: float, beta: float, fn) -> float:
    pair = ud_to_od_pair(J)
    if pair.degenerate:
        lo = UnderDamped(J.lam, J.Omega, 2.0 - 2.0 * CRITICAL_DAMPING_WINDOW)
        hi = UnderDamped(J.lam, J.Omega, 2.0 + 2.0 * CRITICAL_DAMPING_WINDOW)
        return 0.5 * (
            _underdamped_from_pair(lo, nu, beta, fn) + _underdamped_from_pair(hi, nu, beta, fn)
        )
    minus = fn(pair.alpha_minus, pair.omega_minus_sq, nu, beta)
    plus = fn(pair.alpha_plus, pair.omega_plus_sq, nu, beta)
    return _real_difference(minus, plus)


def C_underdamped(J: UnderDamped, nu: float, beta: float) -> float:
    """``C(nu)`` of the under-damped density as ``C_OD^- - C_OD^+``.

    Raises
    ------
    ResidueError
        If the imaginary parts of the two complex terms fail to cancel.
    """
    return _underdamped_from_pair(J, nu, beta, C_overdamped)


def Cprime_underdamped(J: UnderDamped, nu: float, beta: float) -> float:
    """``dC/dnu`` of the under-damped density."""
    return _underdamped_from_pair(J, nu, beta, Cprime_overdamped)


def _check_resonance(Omega: float, nu: float) -> None:
    if abs(Omega - abs(nu)) < RESONANCE_TOLERANCE * Omega:
        raise ResonanceError(f"nu = {nu} is resonant with the mode at Omega = {Omega}")


def C_single_mode(lam: float, Omega: float, nu: float, beta: float) -> float:
    """``C(nu)`` of ``lam^2 delta(w - Omega)``: ``(lam^2/beta)[(n+1)/(Omega-nu) - n/(Omega+nu)]``."""
    _check_resonance(Omega, nu)
    n = thermal_occupation(Omega, beta)
    return lam * lam / beta * ((n + 1.0) / (Omega - nu) - n / (Omega + nu))


def Cprime_single_mode(lam: float, Omega: float, nu: float, beta: float) -> float:
    """``dC/dnu`` of the delta density."""
    _check_resonance(Omega, nu)
    n = thermal_occupation(Omega, beta)
    return lam * lam / beta * ((n + 1.0) / (Omega - nu) ** 2 + n / (Omega + nu) ** 2)


def correlation_C(J: SpectralDensity, nu: float, beta: float) -> float:
    """``C(nu)`` for any supported density, as a real number."""
    if isinstance(J, UnderDamped):
        return C_underdamped(J, nu, beta)
    if isinstance(J, OverDamped):
        return C_overdamped(J.alpha, J.omega_c**2, nu, beta).real
    if isinstance(J, SingleMode):
        return C_single_mode(J.lam, J.Omega, nu, beta)
    raise TypeError(f"unknown spectral density {J!r}")


def correlation_Cprime(J: SpectralDensity, nu: float, beta: float) -> float:
    """``dC/dnu`` for any supported density, as a real number."""
    if isinstance(J, UnderDamped):
        return Cprime_underdamped(J, nu, beta)
    if isinstance(J, OverDamped):
        return Cprime_overdamped(J.alpha, J.omega_c**2, nu, beta).real
    if isinstance(J, SingleMode):
        return Cprime_single_mode(J.lam, J.Omega, nu, beta)
    raise TypeError(f"unknown spectral density {J!r}")


# ---------------------------------------------------------------------------
# assembled kernels


@dataclass(frozen=True)
class BathKernels:
    """Correlation data at one frequency ``nu`` and inverse temperature ``beta``.

    ``C_plus = C(nu)``, ``C_minus = C(-nu)`` and likewise for the derivatives;
    ``G``/``Gp`` are assembled from them; ``Q`` is the reorganization energy.
    """

    nu: float
    beta: float
    C_plus: float
    C_minus: float
    Cp_plus: float
    Cp_minus: float
    Q: float
    G: float = field(init=False)
    Gp: float = field(init=False)

    def __post_init__(self) -> None:
        decay = math.exp(-self.nu * self.beta)
        object.__setattr__(self, "G", self.C_minus + decay * self.C_plus)
        object.__setattr__(
            self,
            "Gp",
            -self.Cp_minus - self.beta * decay * self.C_plus + decay * self.Cp_plus,
        )

    def reflected(self) -> "BathKernels":
        """Kernels at ``-nu``, reusing the same four correlation values."""
        return BathKernels(
            nu=-self.nu,
            beta=self.beta,
            C_plus=self.C_minus,
            C_minus=self.C_plus,
            Cp_plus=self.Cp_minus,
            Cp_minus=self.Cp_plus,
            Q=self.Q,
        )


def bath_kernels(J: SpectralDensity, nu: float, beta: float) -> BathKernels:
    """Evaluate ``C(pm nu)``, ``C'(pm nu)`` and assemble ``G``, ``G'`` for density ``J``."""
    if not beta > 0.0:
        raise ValueError("beta must be positive")
    nu = float(nu)
    c_plus = correlation_C(J, nu, beta)
    cp_plus = correlation_Cprime(J, nu, beta)
    if nu == 0.0:
        c_minus, cp_minus = c_plus, cp_plus
    else:
        c_minus = correlation_C(J, -nu, beta)
        cp_minus = correlation_Cprime(J, -nu, beta)
    return BathKernels(nu, beta, c_plus, c_minus, cp_plus, cp_minus, reorganization_energy(J))


def G_and_Gprime(J: SpectralDensity, nu: float, beta: float) -> tuple[float, float]:
    """``G(nu, beta) = C(-nu) + e^{-beta nu} C(nu)`` and its ``nu``-derivative."""
    k = bath_kernels(J, nu, beta)
    return k.G, k.Gp


def g_kernel(k_nu: BathKernels, k_nu_prime: BathKernels) -> float:
    """Double imaginary-time integral ``g(nu, nu')`` from kernels at ``nu`` and ``nu'``.

    Uses ``beta/(nu'-nu) [e^{(nu'-nu) beta} G(nu') - G(nu)]`` and switches to
    ``beta (beta G(nu) + G'(nu))`` when ``|nu - nu'| beta < 1e-8``.
    """
    beta = k_nu.beta
    if k_nu_prime.beta != beta:
        raise ValueError("kernels must share the same beta")
    delta = k_nu_prime.nu - k_nu.nu
    if abs(delta) * beta < DIAGONAL_THRESHOLD:
        return beta * (beta * k_nu.G + k_nu.Gp)
    return beta / delta * (math.exp(delta * beta) * k_nu_prime.G - k_nu.G)


# ---------------------------------------------------------------------------
# steady state


def steady_state_from_kernels(q: QubitParams, kernels: BathKernels) -> QubitState:
    """Second-order steady state from kernels evaluated at ``nu = omega_s``.

    Raises
    ------
    CommutingCouplingError
        If ``|r| = 0``: the coupling commutes with ``H_S``.
    SingularDenominatorError
        If the shared normalisation falls below 1e-14 in magnitude.
    """
    if q.r_abs2 == 0.0:
        raise CommutingCouplingError("the second-order state needs a transverse field (|r| > 0)")
    if kernels.nu != q.omega_s:
        raise ValueError("kernels must be evaluated at nu = omega_s")
    w = q.omega_s
    beta = kernels.beta
    G, Gp, Q = kernels.G, kernels.Gp, kernels.Q
    decay = math.exp(-w * beta)
    rz2 = q.r_z * q.r_z
    shift = 1.0 + rz2 * beta * Q
    denom = (1.0 + decay) * shift + q.r_abs2 * beta * beta * G
    if abs(denom) < 1e-14:
        raise SingularDenominatorError(f"normalisation {denom:.3e} vanishes")
    c_ge = -2.0 * q.r * q.r_z * (beta / w) * (G - (1.0 + decay) * Q / beta) / denom
    p_e = (decay * shift - q.r_abs2 * beta * Gp) / denom
    return QubitState(p_e, c_ge)


def pe_steady_state(J: SpectralDensity, q: QubitParams, beta: float) -> QubitState:
    """Perturbative mean-force steady state of the spin-boson model for density ``J``."""
    if q.r_abs2 == 0.0:
        raise CommutingCouplingError("the second-order state needs a transverse field (|r| > 0)")
    return steady_state_from_kernels(q, bath_kernels(J, q.omega_s, beta))
