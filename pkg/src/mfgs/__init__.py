"""Spin-boson steady states at strong coupling.

Three routes to the qubit steady state are provided: the second-order
mean-force expansion (:mod:`mfgs.mfgs_pe`), the exact thermal state of the
qubit plus a reaction-coordinate mode (:mod:`mfgs.rc_map`), and the
second-order expansion of that single-mode problem (:mod:`mfgs.prc`).
"""

from ._backend import BACKEND
from .analysis import (
    CriteriaReport,
    DiscrepancyReport,
    criteria,
    discrepancies_exp,
    discrepancies_map,
    high_temperature_flag,
    rule_of_thumb_width,
)
from .bath import (
    OdPair,
    OverDamped,
    SingleMode,
    UnderDamped,
    correlation_function_quadrature,
    evaluate_J,
    reorganization_energy,
    ud_to_od_pair,
)
from .mfgs_pe import (
    BathKernels,
    QubitParams,
    QubitState,
    bath_kernels,
    g_kernel,
    pe_steady_state,
)
from .prc import prc_kernels, prc_steady_state
from .rc_map import rc_params_from_overdamped, rc_steady_state
from .scan import ScanConfig, ScanResult, emit_csv, run_scan

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BathKernels",
    "CriteriaReport",
    "DiscrepancyReport",
    "OdPair",
    "OverDamped",
    "QubitParams",
    "QubitState",
    "ScanConfig",
    "ScanResult",
    "SingleMode",
    "UnderDamped",
    "bath_kernels",
    "correlation_function_quadrature",
    "criteria",
    "discrepancies_exp",
    "discrepancies_map",
    "emit_csv",
    "evaluate_J",
    "g_kernel",
    "high_temperature_flag",
    "pe_steady_state",
    "prc_kernels",
    "prc_steady_state",
    "rc_params_from_overdamped",
    "rc_steady_state",
    "reorganization_energy",
    "rule_of_thumb_width",
    "run_scan",
    "ud_to_od_pair",
]
