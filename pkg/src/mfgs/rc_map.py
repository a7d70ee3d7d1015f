"""Exact thermal state of the qubit plus a truncated reaction-coordinate mode.

``H_SRC = H_S + lam sz (a + a^dag) + Omega a^dag a`` on ``C^2 x C^{N+1}``;
the reduced qubit state is the partial trace of its Gibbs state.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import ConvergenceError, TruncationError
from .mfgs_pe import QubitParams, QubitState

MIN_FOCK = 4
MAX_FOCK = 512
CONVERGENCE_STEP = 16
CONVERGENCE_TOLERANCE = 1e-9
MIN_MAPPING_GAMMA = 5.0
RECOMMENDED_MAPPING_GAMMA = 20.0

_SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)


def rc_params_from_overdamped(alpha: float, omega_c: float, gamma: float) -> tuple[float, float]:
    """Mode coupling and frequency ``(lam, Omega)`` for an over-damped density.

    ``Omega = gamma omega_c`` and ``lam = sqrt(pi/2 alpha omega_c Omega)``.
    The mapping is asymptotic in ``gamma``: values below 5 are rejected and
    values below 20 emit a ``RuntimeWarning``.
    """
    if gamma < MIN_MAPPING_GAMMA:
        raise ValueError(f"mapping width gamma = {gamma} is below {MIN_MAPPING_GAMMA}")
    if gamma < RECOMMENDED_MAPPING_GAMMA:
        warnings.warn(
            f"mapping width gamma = {gamma} < {RECOMMENDED_MAPPING_GAMMA}; "
            "the over-damped mapping is only asymptotically exact",
            RuntimeWarning,
            stacklevel=2,
        )
    Omega = gamma * omega_c
    return math.sqrt(0.5 * math.pi * alpha * omega_c * Omega), Omega


@dataclass(frozen=True)
class ExtendedHamiltonian:
    """Dense ``H_SRC`` in the product basis (``sz`` index major, Fock index minor)."""

    matrix: np.ndarray
    q: QubitParams
    lam: float
    Omega: float
    n_fock: int

    @property
    def dim(self) -> int:
        return 2 * (self.n_fock + 1)


def build_extended_hamiltonian(q: QubitParams, lam: float, Omega: float, n_fock: int) -> ExtendedHamiltonian:
    """Assemble ``H_SRC`` with Fock states ``0..n_fock``."""
    if n_fock < MIN_FOCK:
        raise ValueError(f"Fock cutoff must be at least {MIN_FOCK}")
    d = n_fock + 1
    off = np.sqrt(np.arange(1.0, d))
    position = np.diag(off, 1) + np.diag(off, -1)
    number = np.diag(np.arange(float(d)))
    h = (
        np.kron(q.hamiltonian(), np.eye(d))
        + lam * np.kron(_SIGMA_Z, position)
        + Omega * np.kron(np.eye(2), number)
    )
    return ExtendedHamiltonian(np.ascontiguousarray(h, dtype=complex), q, lam, Omega, n_fock)


@dataclass(frozen=True)
class ExtendedThermalState:
    """Spectrum of ``H_SRC`` and its Gibbs weights at ``beta``.

    ``log_z_shifted`` is ``log sum exp(-beta (E_k - E_min))``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    beta: float
    log_z_shifted: float

    @property
    def weights(self) -> np.ndarray:
        e = self.eigenvalues
        return np.exp(-self.beta * (e - e[0]) - self.log_z_shifted)

    def reduced_sigma_z(self) -> np.ndarray:
        """Qubit density matrix in the ``sz`` basis after tracing out the mode."""
        dim = self.eigenvalues.shape[0]
        v = self.eigenvectors.reshape(2, dim // 2, dim)
        return np.einsum("ink,jnk,k->ij", v, v.conj(), self.weights)


def hermitian_eigendecomposition(h: ExtendedHamiltonian, beta: float) -> ExtendedThermalState:
    """Diagonalise ``H_SRC`` (Householder + implicit QL) and form its Gibbs weights.

    Raises
    ------
    ConvergenceError
        If the QL iteration exceeds its per-eigenvalue budget.
    """
    if not beta > 0.0:
        raise ValueError("beta must be positive")
    try:
        w, v = kernels.eigh(h.matrix)
    except ArithmeticError as exc:
        raise ConvergenceError(str(exc)) from exc
    log_z = float(np.log(np.sum(np.exp(-beta * (w - w[0])))))
    return ExtendedThermalState(w, v, beta, log_z)


def rc_state_at_cutoff(q: QubitParams, lam: float, Omega: float, beta: float, n_fock: int) -> QubitState:
    """Reduced qubit state of the truncated Gibbs state, in the ``{|e>, |g>}`` basis."""
    thermal = hermitian_eigendecomposition(build_extended_hamiltonian(q, lam, Omega, n_fock), beta)
    return QubitState.from_sigma_z_basis(thermal.reduced_sigma_z(), q)


def initial_cutoff(lam: float, Omega: float, beta: float) -> int:
    """Starting Fock cutoff from thermal occupation and displacement ``(lam/Omega)^2``."""
    return max(16, math.ceil(8.0 / (beta * Omega)) + math.ceil(6.0 * lam * lam / (Omega * Omega)) + 16)


def converged_rc_state(
    q: QubitParams, lam: float, Omega: float, beta: float, n_max: int = MAX_FOCK
) -> tuple[QubitState, int]:
    """Auto-truncated reduced state and the cutoff ``N`` that achieved convergence.

    ``N`` is accepted when the state at ``N + 16`` differs by less than 1e-9
    in ``p_e`` and ``c_ge``; otherwise ``N`` doubles.

    Raises
    ------
    TruncationError
        If no cutoff up to ``n_max`` converges.
    """
    n = initial_cutoff(lam, Omega, beta)
    while n <= n_max:
        state = rc_state_at_cutoff(q, lam, Omega, beta, n)
        check = rc_state_at_cutoff(q, lam, Omega, beta, n + CONVERGENCE_STEP)
        if (
            abs(state.p_e - check.p_e) < CONVERGENCE_TOLERANCE
            and abs(state.c_ge - check.c_ge) < CONVERGENCE_TOLERANCE
        ):
            return state, n
        if n == n_max:
            break
        n = min(2 * n, n_max)
    raise TruncationError(
        f"Fock cutoff did not converge up to N = {n_max} (lam={lam}, Omega={Omega}, beta={beta})"
    )


def rc_steady_state(
    q: QubitParams, lam: float, Omega: float, beta: float, n_fock: int | str = "auto"
) -> QubitState:
    """Reduced steady state under the reaction-coordinate mapping.

    ``n_fock="auto"`` selects the cutoff adaptively; an integer fixes it.
    """
    if n_fock == "auto":
        return converged_rc_state(q, lam, Omega, beta)[0]
    return rc_state_at_cutoff(q, lam, Omega, beta, int(n_fock))
