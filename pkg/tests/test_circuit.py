import math

import pytest
from hypothesis import given, strategies as st

from dcesim.circuit import (
    CircuitParams,
    derive_params,
    effective_length,
    josephson_energy,
    plasma_frequency,
    tunable_josephson_energy,
)
from dcesim.constants import CODATA, PhysicalConstants
from dcesim.errors import DomainError, ValidityWarning

from conftest import make_params

PHI0 = CODATA.flux_quantum


def test_josephson_energy_reference_value():
    # 1.25 uA -> I_c Phi_0 / 2 pi evaluated with the CODATA flux quantum.
    expected = 1.25e-6 * PHI0 / (2.0 * math.pi)
    assert josephson_energy(1.25e-6) == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(4.1138e-22, rel=1e-4)


def test_josephson_energy_rejects_nonpositive():
    with pytest.raises(DomainError):
        josephson_energy(0.0)
    with pytest.raises(DomainError):
        josephson_energy(-1e-6)


def test_josephson_energy_linear():
    assert josephson_energy(2.5e-6) == pytest.approx(2.0 * josephson_energy(1.25e-6))


def test_tunable_energy_special_points():
    e_j = 1.0e-22
    assert tunable_josephson_energy(e_j, 0.0) == pytest.approx(2.0 * e_j)
    assert tunable_josephson_energy(e_j, PHI0 / 2.0) == pytest.approx(0.0, abs=1e-37)
    assert tunable_josephson_energy(e_j, PHI0 / 3.0) == pytest.approx(e_j)


@given(st.floats(-3.0, 3.0), st.integers(-3, 3))
def test_tunable_energy_even_and_periodic(flux_frac, periods):
    e_j = 2.0e-22
    flux = flux_frac * PHI0
    base = tunable_josephson_energy(e_j, flux)
    assert tunable_josephson_energy(e_j, -flux) == pytest.approx(base, rel=1e-12)
    shifted = tunable_josephson_energy(e_j, flux + periods * PHI0)
    assert shifted == pytest.approx(base, rel=1e-9, abs=1e-30)


@given(
    st.floats(1e-24, 1e-19),
    st.floats(1e-8, 1e-5),
)
def test_effective_length_round_trip(e_j_eff, line_inductance):
    l_eff = effective_length(e_j_eff, line_inductance)
    product = l_eff * e_j_eff * line_inductance
    assert product == pytest.approx((PHI0 / (2 * math.pi)) ** 2, rel=1e-12)


def test_effective_length_inverse_proportionality():
    l1 = effective_length(1e-22, 4e-7)
    l2 = effective_length(2e-22, 4e-7)
    assert l1 == pytest.approx(2.0 * l2, rel=1e-12)


def test_plasma_frequency_scaling():
    w1 = plasma_frequency(1e-22, 90e-15)
    w2 = plasma_frequency(4e-22, 90e-15)
    assert w2 == pytest.approx(2.0 * w1, rel=1e-12)


def test_plasma_frequency_rejects_nonpositive():
    with pytest.raises(DomainError):
        plasma_frequency(0.0, 90e-15)
    with pytest.raises(DomainError):
        plasma_frequency(1e-22, -1e-15)


def test_derived_reference_lengths_and_plasma(quiet_derive):
    # The standard parameter set lands on 0.44 mm, 0.11 mm, and 37.3 GHz.
    d = quiet_derive(make_params())
    assert d.l_eff0 == pytest.approx(0.44e-3, rel=0.01)
    assert d.delta_l_eff == pytest.approx(0.11e-3, rel=0.01)
    assert d.omega_s / (2 * math.pi) == pytest.approx(37.3e9, rel=0.005)
    assert d.delta_l_eff == pytest.approx(d.l_eff0 * 0.25, rel=1e-12)


def test_derive_params_zero_drive(quiet_derive):
    d = quiet_derive(make_params(drive_ratio=0.0))
    assert d.delta_e_j == 0.0
    assert d.delta_l_eff == 0.0


def test_derive_params_warns_on_long_effective_length():
    # At 18.6 GHz the drive wavelength check trips the 0.3 soft threshold
    # (k L_eff ~ 0.43) while the plasma-frequency margin stays fine.
    with pytest.warns(ValidityWarning, match="L_eff0"):
        d = derive_params(make_params())
    assert len(d.validity_warnings) == 1


def test_derive_params_quiet_at_low_drive_frequency():
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("error")
        d = derive_params(make_params(drive_ghz=5.0))
    assert d.validity_warnings == ()


def test_derive_params_warns_near_plasma_frequency():
    with pytest.warns(ValidityWarning, match="plasma"):
        derive_params(make_params(drive_ghz=35.0))


def test_flux_bias_equivalent_to_ratio(quiet_derive):
    # ej_bias_ratio r corresponds to an external flux with 2 cos = r.
    ratio = 1.3
    flux = PHI0 / math.pi * math.acos(ratio / 2.0)
    p = CircuitParams(
        critical_current=1.25e-6,
        junction_capacitance=90e-15,
        phase_velocity=1.2e8,
        char_impedance=55.0,
        drive_frequency=2.0 * math.pi * 18.6e9,
        ext_flux_bias=flux,
        ej_drive_ratio=0.25,
    )
    d = quiet_derive(p)
    d_ratio = quiet_derive(make_params())
    assert d.e_j0 == pytest.approx(d_ratio.e_j0, rel=1e-12)


def test_line_constants_consistent(params):
    l0 = params.line_inductance
    c0 = params.line_capacitance
    assert 1.0 / math.sqrt(l0 * c0) == pytest.approx(params.phase_velocity, rel=1e-12)
    assert math.sqrt(l0 / c0) == pytest.approx(params.char_impedance, rel=1e-12)


def test_params_validation():
    with pytest.raises(DomainError):
        make_params(drive_ratio=1.0)
    with pytest.raises(DomainError):
        CircuitParams(1.25e-6, 90e-15, 1.2e8, 55.0, 1e9)  # no bias point
    with pytest.raises(DomainError):
        CircuitParams(
            1.25e-6, 90e-15, 1.2e8, 55.0, 1e9, ej_bias_ratio=1.3, ext_flux_bias=0.0
        )  # both bias specs
    with pytest.raises(DomainError):
        CircuitParams(-1e-6, 90e-15, 1.2e8, 55.0, 1e9, ej_bias_ratio=1.3)


def test_constants_validation():
    with pytest.raises(DomainError):
        PhysicalConstants(flux_quantum=-1.0)
    assert CODATA.flux_quantum == pytest.approx(2.067833848e-15)
