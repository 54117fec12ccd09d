import math

import pytest

from dcesim.circuit import CircuitParams, derive_params

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

# Standard microwave parameter set used across the suite: 1.25 uA junctions,
# 90 fF, v = 1.2e8 m/s, 55 Ohm, 18.6 GHz drive, bias 1.3, drive ratio 1/4.
DRIVE_GHZ = 18.6


def make_params(drive_ratio=0.25, drive_ghz=DRIVE_GHZ):
    return CircuitParams(
        critical_current=1.25e-6,
        junction_capacitance=90e-15,
        phase_velocity=1.2e8,
        char_impedance=55.0,
        drive_frequency=2.0 * math.pi * drive_ghz * 1e9,
        ej_bias_ratio=1.3,
        ej_drive_ratio=drive_ratio,
    )


@pytest.fixture
def params():
    return make_params()


@pytest.fixture
def derived(params):
    with pytest.warns(UserWarning):
        return derive_params(params)


@pytest.fixture
def quiet_derive():
    """Derive params while swallowing the expected validity warning."""

    def _derive(p):
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return derive_params(p)

    return _derive
