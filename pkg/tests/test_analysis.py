import math

import pytest

from mfgs.analysis import (
    criteria,
    discrepancies_exp,
    discrepancies_map,
    discrepancy_report,
    high_temperature_flag,
    relative_discrepancies,
    rule_of_thumb_width,
)
from mfgs.bath import OverDamped, UnderDamped
from mfgs.mfgs_pe import QubitParams, QubitState, bath_kernels, pe_steady_state

TILTED = QubitParams.from_tilt(1.0, 0.5)


def test_zero_coupling_criteria_vanish():
    rep = criteria(UnderDamped(0.0, 10.0, 0.1), TILTED, 1.0)
    assert (rep.cr1, rep.cr2, rep.cr3, rep.cr4) == (0.0, 0.0, 0.0, 0.0)
    assert rep.flags == (True, True, True, True)


@pytest.mark.parametrize("J", [UnderDamped(1.0, 10.0, 0.1), OverDamped(0.1, 2.0)], ids=repr)
def test_longitudinal_coupling_cr1_equals_cr4(J):
    rep = criteria(J, QubitParams(1.0, 0.0, 0.0, 1.0), 3.0)
    assert rep.cr1 == pytest.approx(rep.cr4, rel=1e-12)
    assert rep.cr2 == 0.0


def test_energy_criteria():
    rep = criteria(UnderDamped(1.0, 10.0, 0.1), TILTED, 2.0)
    assert rep.cr3 == pytest.approx(0.1, rel=1e-15)
    assert rep.cr4 == pytest.approx(0.2, rel=1e-15)
    assert rep.flags[2] and not rep.flags[3]


def test_cr2_is_largest_population_shift():
    J, beta = UnderDamped(1.0, 10.0, 0.1), 2.0
    rep = criteria(J, TILTED, beta)
    s = pe_steady_state(J, TILTED, beta)
    pth = TILTED.thermal_excited_population(beta)
    assert rep.cr2 == pytest.approx(
        max(abs(s.p_e - pth) / s.p_e, abs(s.p_g - (1 - pth)) / s.p_g), rel=1e-14
    )


def test_supplied_kernels_reused():
    J = UnderDamped(1.0, 10.0, 0.1)
    assert criteria(J, TILTED, 2.0, kernels=bath_kernels(J, 1.0, 2.0)) == criteria(J, TILTED, 2.0)


def test_relative_discrepancies_values():
    ref = QubitState(0.3, 0.2 + 0j)
    other = QubitState(0.29, 0.19 + 0j)
    d_coh, d_pop = relative_discrepancies(ref, other, 0.2)
    assert d_coh == pytest.approx(0.05, rel=1e-12)
    assert d_pop == pytest.approx(0.1, rel=1e-12)
    assert discrepancies_exp(ref, other, 0.2) == (d_coh, d_pop)
    assert discrepancies_map(ref, other, 0.2) == (d_coh, d_pop)


def test_guarded_denominators_give_none():
    ref = QubitState(0.3, 0j)
    d_coh, d_pop = relative_discrepancies(ref, QubitState(0.31, 0.1j), 0.3)
    assert d_coh is None and d_pop is None


def test_report_uses_available_states():
    a, b = QubitState(0.3, 0.2 + 0j), QubitState(0.29, 0.19 + 0j)
    rep = discrepancy_report(0.2, pe=a, prc=b)
    assert rep.d_coh_exp is None and rep.d_pop_exp is None
    assert rep.d_coh_map == pytest.approx(0.05)
    rep = discrepancy_report(0.2, rc=a, prc=b)
    assert rep.d_coh_map is None and rep.d_pop_exp == pytest.approx(0.1)


def test_mapping_heuristics():
    assert rule_of_thumb_width(10.0, 5.0) == pytest.approx(0.06)
    assert high_temperature_flag(1.0 / 3.0, 3.0)
    assert not high_temperature_flag(10.0, 0.5)
    assert high_temperature_flag(1.0, 0.5)
    assert math.isclose(rule_of_thumb_width(2.0, 1.5), 1.0)
