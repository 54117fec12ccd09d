import math

import numpy as np
import pytest

from dcesim.constants import CODATA
from dcesim.errors import DomainError, SolverError
from dcesim.numsolver import (
    DriveSpec,
    FrequencyGrid,
    assemble,
    drive_kernel_g,
    numerical_flux,
    numerical_flux_sweep,
    solve,
    solve_harmonic,
)
from dcesim.observables import photon_flux, thermal_occupation
from dcesim.scattering import mirror_kernel, pump_coupling, reflection_full

from conftest import make_params


@pytest.fixture
def setup(quiet_derive):
    p = make_params()
    return p, quiet_derive(p)


@pytest.fixture
def weak_setup(quiet_derive):
    p = make_params(drive_ratio=0.05)
    return p, quiet_derive(p)


class TestFrequencyGrid:
    def test_sideband_lattice_layout(self, setup):
        p, d = setup
        wd = p.drive_frequency
        grid = FrequencyGrid.sideband(0.37 * wd, 3, wd)
        expected = 0.37 * wd + np.arange(-3, 4) * wd
        assert np.allclose(grid.frequencies, expected)
        assert grid.frequencies.size == 7

    def test_sideband_rejects_bad_base(self, setup):
        p, d = setup
        wd = p.drive_frequency
        with pytest.raises(DomainError):
            FrequencyGrid.sideband(0.0, 3, wd)
        with pytest.raises(DomainError):
            FrequencyGrid.sideband(1.2 * wd, 3, wd)

    def test_uniform_grid_offsets(self, setup):
        p, d = setup
        wd = p.drive_frequency
        step = wd / 4.0
        grid = FrequencyGrid.uniform(2.0 * wd, step, wd)
        assert np.all(grid.frequencies != 0.0)
        assert np.allclose(grid.frequencies, -grid.frequencies[::-1])
        gaps = np.diff(grid.frequencies)
        assert np.allclose(gaps, step)

    def test_uniform_requires_alignment(self, setup):
        p, d = setup
        wd = p.drive_frequency
        with pytest.raises(DomainError):
            FrequencyGrid.uniform(2.0 * wd, wd / 3.9, wd)

    def test_row_lookup(self, setup):
        p, d = setup
        wd = p.drive_frequency
        grid = FrequencyGrid.sideband(0.25 * wd, 2, wd)
        assert grid.row_of(0.25 * wd - 2 * wd) == 0
        assert grid.row_of(0.25 * wd) == 2
        with pytest.raises(DomainError):
            grid.row_of(0.6 * wd)


class TestDriveKernel:
    def test_diagonal_weight(self, setup):
        p, d = setup
        drive = DriveSpec.from_derived(d, p)
        assert drive_kernel_g(1e10, 1e10, drive) == pytest.approx(d.e_j0)

    def test_static_off_diagonal_vanishes(self, setup, quiet_derive):
        p0 = make_params(drive_ratio=0.0)
        d0 = quiet_derive(p0)
        drive = DriveSpec.from_derived(d0, p0)
        wd = p0.drive_frequency
        assert drive_kernel_g(1e10, 1e10 + wd, drive) == 0.0

    def test_adjacent_sideband_weight(self, setup):
        p, d = setup
        drive = DriveSpec.from_derived(d, p)
        wd = p.drive_frequency
        w = 0.37 * wd
        value = drive_kernel_g(w, w + wd, drive)
        assert value == pytest.approx(0.5 * d.delta_e_j * math.sqrt((w + wd) / w))

    def test_distant_pairs_vanish(self, setup):
        p, d = setup
        drive = DriveSpec.from_derived(d, p)
        wd = p.drive_frequency
        assert drive_kernel_g(0.2 * wd, 0.2 * wd + 2 * wd, drive) == 0.0

    def test_zero_frequency_rejected(self, setup):
        p, d = setup
        drive = DriveSpec.from_derived(d, p)
        with pytest.raises(DomainError):
            drive_kernel_g(0.0, 1e10, drive)


class TestAssemble:
    def test_entries_match_printed_forms(self, setup):
        # Row r, column c: the drive kernel evaluated at (column, row)
        # frequencies with the flux-quantum prefactor, plus diagonal
        # derivative and capacitance terms.
        p, d = setup
        wd = p.drive_frequency
        grid = FrequencyGrid.sideband(0.37 * wd, 2, wd)
        m_out, m_in = assemble(grid, d, p)
        drive = DriveSpec.from_derived(d, p)
        phi2 = 1.0 / CODATA.reduced_flux_quantum**2
        freqs = grid.frequencies
        for r in range(freqs.size):
            for c in range(freqs.size):
                g = drive_kernel_g(freqs[c], freqs[r], drive)
                diag = r == c
                expected_out = -phi2 * g + diag * (
                    1j * freqs[r] / p.phase_velocity / p.line_inductance
                    + freqs[r] ** 2 * p.junction_capacitance
                )
                expected_in = phi2 * g + diag * (
                    1j * freqs[r] / p.phase_velocity / p.line_inductance
                    - freqs[r] ** 2 * p.junction_capacitance
                )
                assert m_out[r, c] == pytest.approx(expected_out, rel=1e-12)
                assert m_in[r, c] == pytest.approx(expected_in, rel=1e-12)

    def test_tridiagonal_structure(self, setup):
        p, d = setup
        grid = FrequencyGrid.sideband(0.37 * p.drive_frequency, 4, p.drive_frequency)
        m_out, _ = assemble(grid, d, p)
        n = grid.frequencies.size
        assert m_out.shape == (n, n)
        for r in range(n):
            for c in range(n):
                if abs(r - c) > 1:
                    assert m_out[r, c] == 0.0

    def test_extra_harmonics_widen_coupling(self, setup):
        p, d = setup
        grid = FrequencyGrid.sideband(0.37 * p.drive_frequency, 4, p.drive_frequency)
        m_out, _ = assemble(grid, d, p, harmonics={1: d.delta_e_j, 2: 0.1 * d.delta_e_j})
        assert m_out[0, 2] != 0.0
        assert m_out[0, 3] == 0.0

    def test_unknown_boundary_rejected(self, setup):
        p, d = setup
        grid = FrequencyGrid.sideband(0.37 * p.drive_frequency, 2, p.drive_frequency)
        with pytest.raises(DomainError):
            assemble(grid, d, p, boundary="bogus")


class TestStaticLimit:
    def test_diagonal_reflection(self, quiet_derive):
        p = make_params(drive_ratio=0.0)
        d = quiet_derive(p)
        wd = p.drive_frequency
        sol = solve_harmonic(d, p, 0.37 * wd, 3)
        off = sol.matrix.copy()
        np.fill_diagonal(off, 0.0)
        assert np.max(np.abs(off)) == 0.0
        for n in range(-3, 4):
            w = 0.37 * wd + n * wd
            entry = sol.matrix[sol.grid.row_of(w), sol.grid.row_of(w)]
            expected = reflection_full(abs(w), d, p)
            if w < 0:
                expected = np.conj(expected)
            assert entry == pytest.approx(expected, rel=1e-12)
            assert abs(entry) == pytest.approx(1.0, rel=1e-12)


class TestSolve:
    def test_symplectic_invariant(self, setup):
        p, d = setup
        sol = solve_harmonic(d, p, 0.37 * p.drive_frequency, 5)
        assert sol.symplectic_residual <= 1e-8
        assert sol.condition_number < 1e3

    def test_symplectic_invariant_all_levels(self, setup):
        p, d = setup
        wd = p.drive_frequency
        for boundary in ("full", "no-capacitance", "ideal-mirror"):
            grid = FrequencyGrid.sideband(0.43 * wd, 5, wd)
            sol = solve(*assemble(grid, d, p, boundary=boundary), grid)
            assert sol.symplectic_residual <= 1e-10

    def test_condition_gate(self, setup):
        p, d = setup
        grid = FrequencyGrid.sideband(0.37 * p.drive_frequency, 2, p.drive_frequency)
        m_out, m_in = assemble(grid, d, p)
        with pytest.raises(SolverError, match="condition"):
            solve(m_out, m_in, grid, condition_limit=1.0)

    def test_anomalous_entry_matches_perturbation(self, weak_setup):
        # Ideal-mirror level versus the first-order pair coupling: the
        # relative deviation stays within 5 eps^2.
        p, d = weak_setup
        wd = p.drive_frequency
        eps = 0.05 * 0.5 * wd * d.l_eff0 / p.phase_velocity
        for frac in (0.1, 0.37, 0.5000001, 0.8):
            grid = FrequencyGrid.sideband(frac * wd, 5, wd)
            sol = solve(*assemble(grid, d, p, boundary="ideal-mirror"), grid)
            numeric = sol.anomalous_entry(frac * wd, wd - frac * wd)
            analytic = np.conj(
                pump_coupling(frac * wd, wd - frac * wd, d.delta_l_eff, p.phase_velocity)
            )
            assert abs(abs(numeric) - abs(analytic)) / abs(analytic) <= 5.0 * eps**2
            # Phase agrees too (both purely negative imaginary to leading order).
            assert numeric.imag < 0

    def test_second_order_sidebands_scale(self, setup):
        p, d = setup
        wd = p.drive_frequency
        k = mirror_kernel(d, p)
        eps = k.small_parameter
        values = []
        for order in (5, 7):
            sol = solve_harmonic(d, p, 0.37 * wd, order)
            values.append(abs(sol.normal_entry(0.37 * wd, 0.37 * wd + 2 * wd)) / eps**2)
        assert 0.1 < values[0] < 10.0
        assert values[0] == pytest.approx(values[1], rel=1e-3)


class TestFlux:
    def test_static_zero_temperature_flux_vanishes(self, quiet_derive):
        p = make_params(drive_ratio=0.0)
        d = quiet_derive(p)
        sol = solve_harmonic(d, p, 0.37 * p.drive_frequency, 3)
        assert numerical_flux(sol, 0.0) == 0.0

    def test_matches_parabola_at_peak(self, setup):
        p, d = setup
        wd = p.drive_frequency
        k = mirror_kernel(d, p)
        grid = FrequencyGrid.sideband(0.5000001 * wd, 5, wd)
        sol = solve(*assemble(grid, d, p, boundary="ideal-mirror"), grid)
        analytic = photon_flux(k, 0.0, grid.base)
        assert numerical_flux(sol, 0.0) == pytest.approx(analytic, rel=0.02)

    def test_matches_thermal_closed_form(self, setup):
        p, d = setup
        wd = p.drive_frequency
        k = mirror_kernel(d, p)
        for frac in (0.3, 0.5000001, 0.8):
            grid = FrequencyGrid.sideband(frac * wd, 5, wd)
            sol = solve(*assemble(grid, d, p, boundary="ideal-mirror"), grid)
            analytic = photon_flux(k, 0.025, grid.base)
            assert numerical_flux(sol, 0.025) == pytest.approx(analytic, rel=0.03)

    def test_convergence_in_sideband_order(self, setup):
        p, d = setup
        wd = p.drive_frequency
        reference = None
        for order in (5, 7):
            sol = solve_harmonic(d, p, 0.5000001 * wd, order)
            value = numerical_flux(sol, 0.0)
            if reference is not None:
                assert value == pytest.approx(reference, rel=1e-3)
            reference = value

    def test_uniform_grid_matches_sideband(self, setup):
        # The step-weighted frequency deltas on the uniform grid reproduce
        # the exact sideband coupling when the drive aligns with the step.
        p, d = setup
        wd = p.drive_frequency
        step = wd / 2.0
        grid = FrequencyGrid.uniform(5.2 * wd, step, wd)
        m_out, m_in = assemble(grid, d, p)
        sol = solve(m_out, m_in, grid)
        base = grid.frequencies[grid.row_of(0.25 * wd)]
        side = solve_harmonic(d, p, base, 5)
        assert sol.flux(0.0, base) == pytest.approx(side.flux(0.0), rel=1e-3)
        assert sol.symplectic_residual < 1e-10

    def test_sweep_emits_series(self, setup):
        p, d = setup
        wd = p.drive_frequency
        omegas = np.array([0.31, 0.5000001, 0.77]) * wd
        series = numerical_flux_sweep(d, p, omegas, 5, 0.0, boundary="ideal-mirror")
        assert list(series.columns) == ["n_out"]
        k = mirror_kernel(d, p)
        assert np.allclose(
            series.columns["n_out"], photon_flux(k, 0.0, omegas), rtol=0.02
        )
        assert series.metadata["max_symplectic_residual"] <= 1e-10

    def test_sweep_covers_frequencies_above_drive(self, setup):
        # Above the drive the solver adds spontaneous second-order pairs
        # (frequencies summing to twice the drive, eps^4 flux scale) that
        # the first-order kernel lacks, so compare where thermal conversion
        # dominates and keep the tolerance above that floor.
        p, d = setup
        wd = p.drive_frequency
        omegas = np.array([1.1, 1.2]) * wd
        series = numerical_flux_sweep(d, p, omegas, 5, 0.050, boundary="ideal-mirror")
        analytic = photon_flux(mirror_kernel(d, p), 0.050, omegas)
        assert np.allclose(series.columns["n_out"], analytic, rtol=0.05)
