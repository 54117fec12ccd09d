"""Command-line front end: config ingestion, experiment runs, CSV/JSON output.

Subcommands reproduce the standard experiment families: the single-mirror
flux spectrum with thermal and matrix-solver cross-check columns, the
resonator spectra for tuned/detuned/two-mode scenarios, two-photon
correlations, the second-order coherence trace, squeezing spectra with
parametric-oscillator reference curves, direct access to the matrix
solver, the PO equivalence report, and the elementary photon-rate
estimator.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .circuit import CircuitParams, DerivedParams, derive_params
from .config import load_circuit_config
from .constants import CODATA
from .errors import ConfigError, DomainError, ModelError, QuadratureError, SolverError
from .numsolver import numerical_flux_sweep
from .observables import coherence_g2, pair_correlation, photon_flux, photon_rate, squeezing_spectrum, MirrorMotionParams
from .pomap import equivalence_report, po_kernel, po_params
from .resonator import design_single_mode, design_two_mode, find_modes, resonator_kernel
from .scattering import mirror_kernel
from .series import SpectrumSeries, format_float

THETA_MINUS = math.pi / 4.0
THETA_PLUS = -math.pi / 4.0


def _temperature_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad temperature list {text!r}") from None


def _fraction_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad fraction list {text!r}") from None


def _tag_for_temperature(t_mk: float) -> str:
    if float(t_mk).is_integer():
        return f"T{int(t_mk)}mK"
    return "T" + str(t_mk).replace(".", "p") + "mK"


def _suffixed(out: Path, tag: str) -> Path:
    return out.with_name(f"{out.stem}_{tag}{out.suffix}")


def _half_step_grid(upper: float, count: int) -> np.ndarray:
    # Half-step offsets keep singular endpoints (0, multiples of w_d) off the grid.
    step = upper / count
    return (np.arange(count) + 0.5) * step


def _provenance(params: CircuitParams, derived: DerivedParams) -> dict:
    return {
        "generator": f"dcesim {__version__}",
        "critical_current_ua": params.critical_current * 1e6,
        "junction_capacitance_ff": params.junction_capacitance * 1e15,
        "phase_velocity_m_per_s": params.phase_velocity,
        "char_impedance_ohm": params.char_impedance,
        "drive_frequency_ghz": params.drive_frequency / (2e9 * math.pi),
        "ej_bias_ratio": "none" if params.ej_bias_ratio is None else params.ej_bias_ratio,
        "ext_flux_bias_phi0": (
            "none" if params.ext_flux_bias is None
            else params.ext_flux_bias / CODATA.flux_quantum
        ),
        "ej_drive_ratio": params.ej_drive_ratio,
        "l_eff0_m": derived.l_eff0,
        "delta_l_eff_m": derived.delta_l_eff,
        "plasma_frequency_ghz": derived.omega_s / (2e9 * math.pi),
    }


def _load(args) -> tuple[CircuitParams, DerivedParams]:
    params = load_circuit_config(args.config)
    if getattr(args, "drive_ratio", None) is not None:
        params = CircuitParams(
            critical_current=params.critical_current,
            junction_capacitance=params.junction_capacitance,
            phase_velocity=params.phase_velocity,
            char_impedance=params.char_impedance,
            drive_frequency=params.drive_frequency,
            ej_bias_ratio=params.ej_bias_ratio,
            ej_drive_ratio=args.drive_ratio,
            ext_flux_bias=params.ext_flux_bias,
        )
    return params, derive_params(params)


def _emit(series: SpectrumSeries, path: Path, fmt: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    series.write(path, fmt)
    print(path)


def cmd_mirror_spectrum(args) -> int:
    params, derived = _load(args)
    kernel = mirror_kernel(derived, params)
    wd = params.drive_frequency
    omegas = _half_step_grid(2.0 * wd, args.grid_points)
    out = Path(args.out)

    for t_mk in args.temperature_mk:
        temperature = t_mk * 1e-3
        analytic = photon_flux(kernel, temperature, omegas)
        spontaneous = photon_flux(kernel, 0.0, omegas)
        thermal = analytic - spontaneous
        numeric = numerical_flux_sweep(
            derived, params, omegas, args.sidebands, temperature, boundary=args.boundary
        )
        metadata = _provenance(params, derived)
        metadata.update(
            {
                "command": "mirror-spectrum",
                "temperature_mk": t_mk,
                "sideband_order": args.sidebands,
                "boundary": args.boundary,
                "epsilon": kernel.small_parameter,
                "max_symplectic_residual": numeric.metadata["max_symplectic_residual"],
            }
        )
        series = SpectrumSeries(
            axis_name="omega_over_omega_d",
            axis_unit="dimensionless",
            x=omegas / wd,
            columns={
                "n_thermal": thermal,
                "n_total_analytic": analytic,
                "n_total_numeric": numeric.columns["n_out"],
            },
            metadata=metadata,
        )
        _emit(series, _suffixed(out, _tag_for_temperature(t_mk)), args.format)
    return 0


def _mode_sidecar(path: Path, spec, table, metadata: dict) -> None:
    payload = {
        "metadata": {k: str(v) for k, v in metadata.items()},
        "coupling_rad_s": float(format_float(spec.coupling)),
        "base_mode_rad_s": float(format_float(spec.base_mode)),
        "effective_length_m": float(format_float(spec.effective_length)),
        "modes": [
            {
                "index": mode.index,
                "frequency_rad_s": float(format_float(mode.frequency)),
                "width_rad_s": float(format_float(mode.width)),
                "quality": float(format_float(mode.quality)),
            }
            for mode in table.modes
        ],
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as handle:
        json.dump(payload, handle, indent=1, sort_keys=True)
        handle.write("\n")
    print(path)


def cmd_resonator_spectrum(args) -> int:
    params, derived = _load(args)
    wd = params.drive_frequency
    out = Path(args.out)
    mirror_ref = mirror_kernel(derived, params)

    scenarios = [(f"f0p{int(round(frac * 100)):02d}", frac) for frac in args.mode_frequency]
    if args.two_mode:
        scenarios.append(("twomode", None))

    omegas = _half_step_grid(wd, args.grid_points)
    for tag, frac in scenarios:
        if frac is None:
            spec = design_two_mode(args.q0, derived, params)
        else:
            spec = design_single_mode(frac * wd, args.q0, derived, params)
        kernel = resonator_kernel(spec, derived, params)
        table = find_modes(spec, 5)
        for t_mk in args.temperature_mk:
            temperature = t_mk * 1e-3
            total = photon_flux(kernel, temperature, omegas)
            thermal = total - photon_flux(kernel, 0.0, omegas)
            reference = photon_flux(mirror_ref, temperature, omegas)
            metadata = _provenance(params, derived)
            metadata.update(
                {
                    "command": "resonator-spectrum",
                    "scenario": tag,
                    "temperature_mk": t_mk,
                    "q0_target": args.q0,
                    "epsilon_res": kernel.small_parameter,
                    "mode0_frequency_over_omega_d": table[0].frequency / wd,
                    "mode0_width_rad_s": table[0].width,
                }
            )
            series = SpectrumSeries(
                axis_name="omega_over_omega_d",
                axis_unit="dimensionless",
                x=omegas / wd,
                columns={
                    "n_total": total,
                    "n_thermal": thermal,
                    "n_mirror_reference": reference,
                },
                metadata=metadata,
            )
            _emit(series, _suffixed(out, f"{tag}_{_tag_for_temperature(t_mk)}"), args.format)
        _mode_sidecar(
            _suffixed(out, f"{tag}_modes").with_suffix(".json"),
            spec,
            table,
            {"command": "resonator-spectrum", "scenario": tag, "q0_target": args.q0},
        )
    return 0


def cmd_correlations(args) -> int:
    params, derived = _load(args)
    wd = params.drive_frequency
    mirror = mirror_kernel(derived, params)
    spec = design_single_mode(args.mode_frequency * wd, args.q0, derived, params)
    resonator = resonator_kernel(spec, derived, params)

    deltas = _half_step_grid(0.5 * wd * 0.999, args.grid_points)
    thermal_mk = args.temperature_mk[0] if args.temperature_mk else 25.0
    columns = {
        "corr_mirror": np.abs(pair_correlation(mirror, 0.0, deltas)),
        "corr_mirror_thermal": np.abs(
            pair_correlation(mirror, thermal_mk * 1e-3, deltas)
        ),
        "corr_resonator": np.abs(pair_correlation(resonator, 0.0, deltas)),
    }
    metadata = _provenance(params, derived)
    metadata.update(
        {
            "command": "correlations",
            "thermal_reference_mk": thermal_mk,
            "resonator_mode0_over_omega_d": args.mode_frequency,
            "q0_target": args.q0,
            "epsilon": mirror.small_parameter,
            "epsilon_res": resonator.small_parameter,
        }
    )
    series = SpectrumSeries(
        axis_name="delta_omega_over_omega_d",
        axis_unit="dimensionless",
        x=deltas / wd,
        columns=columns,
        metadata=metadata,
    )
    _emit(series, Path(args.out), args.format)
    return 0


def cmd_g2(args) -> int:
    params, derived = _load(args)
    wd = params.drive_frequency
    mirror = mirror_kernel(derived, params)
    spec = design_single_mode(0.5 * wd, args.q0, derived, params)
    resonator = resonator_kernel(spec, derived, params)

    tau = np.linspace(0.0, args.tau_max / wd, args.grid_points)
    g2_mirror = coherence_g2(mirror, tau).columns["g2"]
    g2_resonator = coherence_g2(resonator, tau).columns["g2"]
    metadata = _provenance(params, derived)
    metadata.update(
        {
            "command": "g2",
            "q0_target": args.q0,
            "epsilon": mirror.small_parameter,
            "epsilon_res": resonator.small_parameter,
        }
    )
    series = SpectrumSeries(
        axis_name="tau_omega_d",
        axis_unit="dimensionless",
        x=tau * wd,
        columns={"g2_mirror": g2_mirror, "g2_resonator": g2_resonator},
        metadata=metadata,
    )
    _emit(series, Path(args.out), args.format)
    return 0


def _po_squeezing(po, deltas, theta):
    f_po, g_po = po_kernel(deltas, po)
    # The PO convention lacks the mirror sign; align the elastic phase so
    # the reference curves overlay the resonator ones.
    cross = np.exp(-2j * theta) * (-f_po) * np.conj(g_po)
    return 1.0 + 2.0 * np.abs(g_po) ** 2 + 2.0 * cross.real


def cmd_squeezing(args) -> int:
    params, derived = _load(args)
    wd = params.drive_frequency
    mirror = mirror_kernel(derived, params)

    reduced = argparse.Namespace(**vars(args))
    reduced.drive_ratio = args.drive_ratio if args.drive_ratio is not None else 0.02
    res_params, res_derived = _load(reduced)
    spec = design_single_mode(0.5 * wd, args.q0, res_derived, res_params)
    resonator = resonator_kernel(spec, res_derived, res_params)
    po = po_params(spec, res_derived, res_params)

    deltas = np.linspace(-0.5 * wd * 0.999, 0.5 * wd * 0.999, args.grid_points)
    columns = {
        "s_x_minus_mirror": squeezing_spectrum(mirror, THETA_MINUS, deltas).columns["squeezing"],
        "s_x_plus_mirror": squeezing_spectrum(mirror, THETA_PLUS, deltas).columns["squeezing"],
        "s_x_minus_resonator": squeezing_spectrum(resonator, THETA_MINUS, deltas).columns["squeezing"],
        "s_x_plus_resonator": squeezing_spectrum(resonator, THETA_PLUS, deltas).columns["squeezing"],
        "s_x_minus_po": _po_squeezing(po, deltas, THETA_MINUS),
        "s_x_plus_po": _po_squeezing(po, deltas, THETA_PLUS),
    }
    metadata = _provenance(params, derived)
    metadata.update(
        {
            "command": "squeezing",
            "q0_target": args.q0,
            "resonator_drive_ratio": res_params.ej_drive_ratio,
            "epsilon": mirror.small_parameter,
            "epsilon_res": resonator.small_parameter,
            "po_reference": "elastic phase aligned to the scattering convention",
        }
    )
    series = SpectrumSeries(
        axis_name="delta_omega_over_omega_d",
        axis_unit="dimensionless",
        x=deltas / wd,
        columns=columns,
        metadata=metadata,
    )
    _emit(series, Path(args.out), args.format)
    return 0


def cmd_numsolve(args) -> int:
    params, derived = _load(args)
    wd = params.drive_frequency
    omegas = _half_step_grid(2.0 * wd, args.grid_points)
    out = Path(args.out)
    for t_mk in args.temperature_mk:
        series = numerical_flux_sweep(
            derived, params, omegas, args.sidebands, t_mk * 1e-3, boundary=args.boundary
        )
        metadata = _provenance(params, derived)
        metadata.update(series.metadata)
        metadata.update({"command": "numsolve", "temperature_mk": t_mk})
        rescaled = SpectrumSeries(
            axis_name="omega_over_omega_d",
            axis_unit="dimensionless",
            x=omegas / wd,
            columns=series.columns,
            metadata=metadata,
        )
        _emit(rescaled, _suffixed(out, _tag_for_temperature(t_mk)), args.format)
    return 0


def cmd_po_compare(args) -> int:
    params, derived = _load(args)
    wd = params.drive_frequency
    spec = design_single_mode(0.5 * wd, args.q0, derived, params, placement=args.placement)
    width = po_params(
        params=params, spec=spec, derived=derived, damping_source=args.damping_source
    ).damping
    report = equivalence_report(
        spec,
        derived,
        params,
        window=args.window_widths * width,
        n_points=args.grid_points,
        damping_source=args.damping_source,
    )
    metadata = _provenance(params, derived)
    metadata.update(report.metadata)
    metadata.update({"command": "po-compare", "q0_target": args.q0})
    series = SpectrumSeries(
        axis_name="detuning_over_gamma0",
        axis_unit="dimensionless",
        x=report.x / width,
        columns=report.columns,
        metadata=metadata,
    )
    _emit(series, Path(args.out), args.format)
    return 0


def cmd_rate(args) -> int:
    motion = MirrorMotionParams(
        amplitude=args.amplitude_m,
        mirror_drive=args.omega_rad_s,
        cavity_quality=args.quality,
    )
    rate = photon_rate(motion)
    print(f"amplitude_m = {format_float(motion.amplitude)}")
    print(f"omega_rad_s = {format_float(motion.mirror_drive)}")
    print(f"max_speed_over_c = {format_float(motion.max_speed / CODATA.light_speed)}")
    if motion.cavity_quality is not None:
        print(f"cavity_quality = {format_float(motion.cavity_quality)}")
    print(f"photon_rate_per_s = {format_float(rate)}")
    return 0


def _add_common(parser, config=True, out=True):
    if config:
        parser.add_argument("--config", required=True, help="circuit config file")
    if out:
        parser.add_argument("--out", required=True, help="output path")
        parser.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcesim",
        description="Photon flux, correlation, and squeezing spectra of "
        "SQUID-terminated superconducting waveguides",
    )
    parser.add_argument("--version", action="version", version=f"dcesim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mirror-spectrum", help="single-mirror flux spectrum per temperature")
    _add_common(p)
    p.add_argument("--temperature-mk", type=_temperature_list, default=[0.0, 25.0, 50.0])
    p.add_argument("--grid-points", type=int, default=200)
    p.add_argument("--sidebands", type=int, default=5)
    p.add_argument("--boundary", choices=("full", "no-capacitance", "ideal-mirror"),
                   default="ideal-mirror")
    p.set_defaults(func=cmd_mirror_spectrum)

    p = sub.add_parser("resonator-spectrum", help="resonator flux spectra per scenario")
    _add_common(p)
    p.add_argument("--temperature-mk", type=_temperature_list, default=[25.0])
    p.add_argument("--grid-points", type=int, default=800)
    p.add_argument("--q0", type=float, default=20.0)
    p.add_argument("--mode-frequency", type=_fraction_list, default=[0.5, 0.4],
                   help="mode-0 placements as fractions of the drive frequency")
    p.add_argument("--two-mode", action="store_true",
                   help="add the scenario with modes 0 and 1 summing to the drive")
    p.add_argument("--drive-ratio", type=float, default=0.02,
                   help="override the config drive ratio (resonators need weaker drive)")
    p.set_defaults(func=cmd_resonator_spectrum)

    p = sub.add_parser("correlations", help="two-photon correlation magnitudes")
    _add_common(p)
    p.add_argument("--temperature-mk", type=_temperature_list, default=[25.0])
    p.add_argument("--grid-points", type=int, default=200)
    p.add_argument("--q0", type=float, default=20.0)
    p.add_argument("--mode-frequency", type=float, default=0.48)
    p.add_argument("--drive-ratio", type=float, default=None)
    p.set_defaults(func=cmd_correlations)

    p = sub.add_parser("g2", help="second-order coherence versus delay")
    _add_common(p)
    p.add_argument("--grid-points", type=int, default=120)
    p.add_argument("--tau-max", type=float, default=40.0,
                   help="largest delay in units of 1/omega_d")
    p.add_argument("--q0", type=float, default=20.0)
    p.add_argument("--drive-ratio", type=float, default=None)
    p.set_defaults(func=cmd_g2)

    p = sub.add_parser("squeezing", help="squeezing spectra with PO reference curves")
    _add_common(p)
    p.add_argument("--grid-points", type=int, default=401)
    p.add_argument("--q0", type=float, default=20.0)
    p.add_argument("--drive-ratio", type=float, default=None,
                   help="drive ratio for the resonator/PO curves (default 0.02)")
    p.set_defaults(func=cmd_squeezing)

    p = sub.add_parser("numsolve", help="matrix-solver flux spectrum")
    _add_common(p)
    p.add_argument("--temperature-mk", type=_temperature_list, default=[0.0])
    p.add_argument("--grid-points", type=int, default=200)
    p.add_argument("--sidebands", type=int, default=5)
    p.add_argument("--boundary", choices=("full", "no-capacitance", "ideal-mirror"),
                   default="full")
    p.set_defaults(func=cmd_numsolve)

    p = sub.add_parser("po-compare", help="resonator versus parametric-oscillator deviations")
    _add_common(p)
    p.add_argument("--grid-points", type=int, default=801)
    p.add_argument("--q0", type=float, default=50.0)
    p.add_argument("--drive-ratio", type=float, default=0.002)
    p.add_argument("--window-widths", type=float, default=2.0,
                   help="detuning window in units of the mode-0 width")
    p.add_argument("--placement", choices=("root", "pole"), default="pole")
    p.add_argument("--damping-source", choices=("mode-table", "response-pole"),
                   default="response-pole")
    p.set_defaults(func=cmd_po_compare)

    p = sub.add_parser("rate", help="oscillating-mirror photon rate estimate")
    p.add_argument("--amplitude-m", type=float, required=True)
    p.add_argument("--omega-rad-s", type=float, required=True)
    p.add_argument("--quality", type=float, default=None)
    p.set_defaults(func=cmd_rate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SolverError, ModelError, QuadratureError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
