"""Validity criteria of the perturbative expansion and cross-method discrepancies."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bath import SpectralDensity
from .mfgs_pe import (
    BathKernels,
    QubitParams,
    QubitState,
    bath_kernels,
    g_kernel,
    steady_state_from_kernels,
)

CRITERION_THRESHOLD = 0.1
DENOMINATOR_GUARD = 1e-12


@dataclass(frozen=True)
class CriteriaReport:
    """Four smallness measures of the second-order expansion.

    ``cr1``: relative second-order correction to the partition function;
    ``cr2``: largest relative population shift; ``cr3 = Q/omega_s``;
    ``cr4 = beta Q``.
    """

    cr1: float
    cr2: float
    cr3: float
    cr4: float

    @property
    def flags(self) -> tuple[bool, bool, bool, bool]:
        """``cr_i <= 0.1`` for each criterion."""
        return tuple(c <= CRITERION_THRESHOLD for c in (self.cr1, self.cr2, self.cr3, self.cr4))


def criteria(
    J: SpectralDensity, q: QubitParams, beta: float, kernels: BathKernels | None = None
) -> CriteriaReport:
    """Evaluate ``cr1..cr4``; ``kernels`` at ``nu = omega_s`` are reused when given."""
    if kernels is None:
        kernels = bath_kernels(J, q.omega_s, beta)
    k0 = bath_kernels(J, 0.0, beta)
    k_neg = kernels.reflected()
    p_e_th = q.thermal_excited_population(beta)
    p_g_th = 1.0 - p_e_th
    cr1 = abs(
        q.r_abs2 * p_g_th * g_kernel(kernels, kernels)
        + q.r_abs2 * p_e_th * g_kernel(k_neg, k_neg)
        + q.r_z * q.r_z * g_kernel(k0, k0)
    )
    if q.r_abs2 > 0.0:
        ss = steady_state_from_kernels(q, kernels)
        cr2 = max(_relative_shift(ss.p_e, p_e_th), _relative_shift(ss.p_g, p_g_th))
    else:
        cr2 = 0.0
    Q = kernels.Q
    return CriteriaReport(cr1, cr2, Q / q.omega_s, beta * Q)


def _relative_shift(p_ss: float, p_th: float) -> float:
    if abs(p_ss) < 1e-300:
        return math.inf
    return abs(p_ss - p_th) / abs(p_ss)


def _guarded_ratio(numerator: complex, denominator: complex) -> float | None:
    if abs(denominator) <= DENOMINATOR_GUARD:
        return None
    return float((numerator / denominator).real)


def relative_discrepancies(
    reference: QubitState, other: QubitState, p_th: float
) -> tuple[float | None, float | None]:
    """``((c_ref - c_other)/c_ref, (p_ref - p_other)/(p_ref - p_th))``; ``None`` when guarded."""
    d_coh = _guarded_ratio(reference.c_ge - other.c_ge, reference.c_ge)
    d_pop = _guarded_ratio(reference.p_e - other.p_e, reference.p_e - p_th)
    return d_coh, d_pop


def discrepancies_exp(rc: QubitState, prc: QubitState, p_th: float) -> tuple[float | None, float | None]:
    """Error of the perturbative expansion: exact mode state vs its expansion."""
    return relative_discrepancies(rc, prc, p_th)


def discrepancies_map(pe: QubitState, prc: QubitState, p_th: float) -> tuple[float | None, float | None]:
    """Error of the mode mapping: expansion for the full bath vs for the single mode."""
    return relative_discrepancies(pe, prc, p_th)


@dataclass(frozen=True)
class DiscrepancyReport:
    """All four discrepancies; ``None`` marks a guarded (near-zero) denominator."""

    d_coh_exp: float | None
    d_pop_exp: float | None
    d_coh_map: float | None
    d_pop_map: float | None


def discrepancy_report(
    p_th: float,
    pe: QubitState | None = None,
    rc: QubitState | None = None,
    prc: QubitState | None = None,
) -> DiscrepancyReport:
    """Combine whichever discrepancies the available states allow."""
    exp = discrepancies_exp(rc, prc, p_th) if rc is not None and prc is not None else (None, None)
    mp = discrepancies_map(pe, prc, p_th) if pe is not None and prc is not None else (None, None)
    return DiscrepancyReport(exp[0], exp[1], mp[0], mp[1])


def rule_of_thumb_width(Omega: float, beta: float) -> float:
    """Largest under-damped width ``3/(Omega beta)`` for which the mapping is expected to hold."""
    return 3.0 / (Omega * beta)


def high_temperature_flag(Omega: float, beta: float) -> bool:
    """``Omega beta <= 1`` (with rounding slack), where the mapping holds for any width."""
    return Omega * beta <= 1.0 + 1e-12
