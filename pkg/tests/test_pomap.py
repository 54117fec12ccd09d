import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dcesim.errors import DomainError, ModelError, ValidityWarning
from dcesim.pomap import POParams, equivalence_report, po_kernel, po_params
from dcesim.resonator import design_single_mode, epsilon_res, find_modes, mode_pole

from conftest import make_params


@pytest.fixture
def weak(quiet_derive):
    p = make_params(drive_ratio=0.002)
    return p, quiet_derive(p)


@pytest.fixture
def tuned(weak):
    p, d = weak
    spec = design_single_mode(p.drive_frequency / 2.0, 50.0, d, p)
    return p, d, spec


class TestPOParams:
    def test_mapped_values(self, tuned):
        p, d, spec = tuned
        table = find_modes(spec, 0)
        po = po_params(spec, d, p, table)
        assert po.damping == table[0].width
        expected = d.delta_l_eff * p.drive_frequency / (4.0 * spec.effective_length)
        assert po.pump == pytest.approx(-1j * expected, rel=1e-12)
        assert po.pump.real == 0.0
        assert po.pump.imag < 0.0

    def test_zero_drive_below_threshold(self, quiet_derive):
        p = make_params(drive_ratio=0.0)
        d = quiet_derive(p)
        spec = design_single_mode(p.drive_frequency / 2.0, 50.0, d, p)
        po = po_params(spec, d, p)
        assert po.pump == 0.0
        assert po.below_threshold

    def test_threshold_margin_equals_resonator_epsilon(self, tuned):
        # |pump| / (damping/2) reproduces the resonator perturbation
        # parameter exactly when both use the closed-form width.
        p, d, spec = tuned
        table = find_modes(spec, 0)
        po = po_params(spec, d, p, table)
        eps = epsilon_res(spec, d, p.drive_frequency, 0, table)
        assert po.threshold_margin == pytest.approx(eps, rel=1e-12)

    def test_threshold_flag_flips_with_epsilon(self, quiet_derive):
        # Below-threshold flag iff the resonator perturbation parameter
        # is under one; probe both sides by scaling the drive.
        for ratio, expect in ((0.002, True), (0.08, False)):
            p = make_params(drive_ratio=ratio)
            d = quiet_derive(p)
            spec = design_single_mode(p.drive_frequency / 2.0, 400.0, d, p)
            table = find_modes(spec, 0)
            eps = epsilon_res(spec, d, p.drive_frequency, 0, table)
            po = po_params(spec, d, p, table)
            assert (eps < 1.0) is expect
            assert po.below_threshold is expect

    def test_pump_linear_in_modulation(self, quiet_derive):
        pumps = []
        for ratio in (0.001, 0.002):
            p = make_params(drive_ratio=ratio)
            d = quiet_derive(p)
            spec = design_single_mode(p.drive_frequency / 2.0, 50.0, d, p)
            pumps.append(po_params(spec, d, p).pump)
        assert pumps[1] == pytest.approx(2.0 * pumps[0], rel=1e-9)

    def test_detuned_mode_warns(self, weak):
        p, d = weak
        spec = design_single_mode(0.4 * p.drive_frequency, 50.0, d, p)
        with pytest.warns(ValidityWarning, match="detuned"):
            po_params(spec, d, p)

    def test_pole_damping_source(self, tuned):
        p, d, spec = tuned
        table = find_modes(spec, 0)
        po = po_params(spec, d, p, table, damping_source="response-pole")
        pole = mode_pole(spec, 0, table)
        assert po.damping == pytest.approx(-2.0 * pole.imag, rel=1e-12)
        with pytest.raises(DomainError):
            po_params(spec, d, p, table, damping_source="bogus")


class TestPOKernel:
    def test_no_pump_unit_modulus(self):
        po = POParams(damping=1.0, pump=0.0)
        for w in (0.0, 0.3, 2.0):
            f, g = po_kernel(w, po)
            assert g == 0.0
            assert abs(f) == pytest.approx(1.0, rel=1e-12)
        f0, _ = po_kernel(0.0, po)
        assert f0 == pytest.approx(1.0)

    def test_zero_detuning_gain(self):
        po = POParams(damping=2.0, pump=0.3j)
        f, g = po_kernel(0.0, po)
        expected = po.damping * po.pump / ((po.damping / 2.0) ** 2 - abs(po.pump) ** 2)
        assert g == pytest.approx(expected, rel=1e-12)
        # Gain is maximal on carrier.
        for w in (0.5, 1.0, 3.0):
            assert abs(po_kernel(w, po)[1]) < abs(g)

    @given(
        st.floats(1e-3, 1e3),
        st.floats(0.0, 0.49),
        st.floats(0.0, 2.0 * math.pi),
        st.floats(-5.0, 5.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_bogoliubov_identity(self, damping, pump_frac, phase, w_frac):
        po = POParams(
            damping=damping, pump=pump_frac * damping * complex(math.cos(phase), math.sin(phase))
        )
        f, g = po_kernel(w_frac * damping, po)
        assert abs(f) ** 2 - abs(g) ** 2 == pytest.approx(1.0, rel=1e-12)

    def test_above_threshold_rejected(self):
        po = POParams(damping=1.0, pump=0.6)
        with pytest.raises(ModelError, match="threshold"):
            po_kernel(0.1, po)


class TestEquivalence:
    def test_deviations_small_and_shrinking(self, weak):
        p, d = weak
        wd = p.drive_frequency
        previous = None
        for q in (50.0, 100.0):
            spec = design_single_mode(wd / 2.0, q, d, p, placement="pole")
            report = equivalence_report(spec, d, p, damping_source="response-pole")
            elastic = np.max(report.columns["elastic_dev_aligned"]) / report.metadata["f_scale"]
            pair_rms = np.sqrt(
                np.mean(report.columns["pair_dev_aligned"] ** 2)
            ) / report.metadata["g_scale"]
            assert elastic <= 0.02
            assert pair_rms <= 0.05
            if previous is not None:
                assert elastic < previous[0]
                assert pair_rms < previous[1]
            previous = (elastic, pair_rms)

    def test_alignment_phase_near_pi(self, tuned):
        # The PO convention lacks the mirror minus sign, so the optimal
        # global rotation for the elastic pair sits near half a turn.
        p, d, spec = tuned
        report = equivalence_report(spec, d, p)
        assert abs(abs(report.metadata["elastic_alignment_phase_rad"]) - math.pi) < 0.3

    def test_zero_pump_reduces_to_reflection_check(self, quiet_derive):
        # Without a drive both deviations collapse onto the elastic one,
        # bounded by the single-pole fidelity of the reflection.
        p = make_params(drive_ratio=0.0)
        d = quiet_derive(p)
        spec = design_single_mode(p.drive_frequency / 2.0, 50.0, d, p, placement="pole")
        report = equivalence_report(spec, d, p, damping_source="response-pole")
        assert report.metadata["g_scale"] == 0.0
        assert np.allclose(report.columns["pair_dev_raw"], 0.0)
        assert np.max(report.columns["elastic_dev_aligned"]) <= 0.02

    def test_low_q_warns(self, weak):
        p, d = weak
        spec = design_single_mode(p.drive_frequency / 2.0, 10.0, d, p)
        with pytest.warns(ValidityWarning, match="quality"):
            equivalence_report(spec, d, p)
