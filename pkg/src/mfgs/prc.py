"""Perturbative expansion applied to the reaction-coordinate mode alone.

The mapped problem is a qubit coupled to a single harmonic mode, i.e. the
delta density ``lam^2 delta(w - Omega)``; its kernels are rational functions.
"""

from __future__ import annotations

from .bath import SingleMode
from .mfgs_pe import BathKernels, QubitParams, QubitState, bath_kernels, steady_state_from_kernels


def prc_kernels(lam: float, Omega: float, nu: float, beta: float) -> BathKernels:
    """Kernels of a single mode at frequency ``Omega`` with coupling ``lam``.

    Raises
    ------
    ResonanceError
        If ``|Omega - |nu|| < 1e-10 Omega``.
    """
    return bath_kernels(SingleMode(lam, Omega), nu, beta)


def prc_steady_state(q: QubitParams, lam: float, Omega: float, beta: float) -> QubitState:
    """Second-order steady state of the qubit coupled to the single mode."""
    return steady_state_from_kernels(q, prc_kernels(lam, Omega, q.omega_s, beta))
