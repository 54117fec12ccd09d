"""Open resonator formed by a capacitive gap in front of the SQUID boundary.

The gap couples a finite section of line (terminated by the effective
mirror) to the semi-infinite waveguide. This module provides the gap
coupling transformation, the propagation phase across the resonator, the
elastic reflection and resonator response seen from the waveguide, the
transcendental mode structure with widths and quality factors, inversion
helpers that hit target (frequency, Q) values, and the resonator
scattering kernel.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .circuit import CircuitParams, DerivedParams
from .constants import CODATA, PhysicalConstants
from .errors import BracketError, DomainError, ModelError, SingularFrequencyError, ValidityWarning
from .scattering import ScatterKernel, pump_coupling, small_parameter

DENOMINATOR_FLOOR = 1e-14
DESIGN_TOLERANCE = 1e-9
_MODES_FOR_KERNEL = 8


@dataclass(frozen=True)
class ResonatorSpec:
    """Geometry-derived parameters of the gap-coupled resonator.

    Attributes
    ----------
    coupling:
        Gap coupling strength omega_c = 1/(C_c Z0) (rad/s).
    gap_capacitance:
        Capacitance of the gap (F).
    squid_position:
        Physical distance from the gap to the SQUID (m).
    effective_length:
        Distance from the gap to the effective mirror, d + L_eff0 (m).
    base_mode:
        Full-wavelength frequency of the decoupled resonator,
        omega_0 = 2 pi v / d_eff (rad/s).
    """

    coupling: float
    gap_capacitance: float
    squid_position: float
    effective_length: float
    base_mode: float

    def __post_init__(self):
        for name in ("coupling", "gap_capacitance", "effective_length", "base_mode"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be strictly positive")
        if not self.effective_length > self.squid_position:
            raise DomainError("effective length must exceed the SQUID position")

    @classmethod
    def from_geometry(
        cls,
        gap_capacitance: float,
        squid_position: float,
        derived: DerivedParams,
        params: CircuitParams,
    ) -> "ResonatorSpec":
        """Build a spec from the physical gap capacitance and SQUID position."""
        if not gap_capacitance > 0:
            raise DomainError("gap capacitance must be strictly positive")
        d_eff = squid_position + derived.l_eff0
        return cls(
            coupling=1.0 / (gap_capacitance * params.char_impedance),
            gap_capacitance=gap_capacitance,
            squid_position=squid_position,
            effective_length=d_eff,
            base_mode=2.0 * math.pi * params.phase_velocity / d_eff,
        )

    @classmethod
    def from_targets(
        cls,
        coupling: float,
        base_mode: float,
        derived: DerivedParams,
        params: CircuitParams,
    ) -> "ResonatorSpec":
        """Build a spec from (omega_c, omega_0), deriving the geometry back."""
        d_eff = 2.0 * math.pi * params.phase_velocity / base_mode
        return cls(
            coupling=coupling,
            gap_capacitance=1.0 / (coupling * params.char_impedance),
            squid_position=d_eff - derived.l_eff0,
            effective_length=d_eff,
            base_mode=base_mode,
        )


@dataclass(frozen=True)
class Mode:
    index: int
    frequency: float
    width: float
    quality: float


@dataclass(frozen=True)
class ModeTable:
    """Resonant modes, strictly increasing in frequency."""

    modes: tuple[Mode, ...]

    def __getitem__(self, n: int) -> Mode:
        return self.modes[n]

    def __len__(self) -> int:
        return len(self.modes)

    def frequencies(self) -> np.ndarray:
        return np.array([m.frequency for m in self.modes])

    def nearest(self, frequency: float) -> Mode:
        gaps = np.abs(self.frequencies() - frequency)
        return self.modes[int(np.argmin(gaps))]


def coupling_transform(omega: float, coupling: float) -> np.ndarray:
    """2x2 map from waveguide-side to resonator-side mode operators.

    Unimodular for every frequency; reduces to the identity when the gap
    decouples (coupling -> 0).
    """
    if not omega > 0:
        raise DomainError("coupling_transform is singular at omega <= 0")
    x = coupling / (2.0 * omega)
    return np.array(
        [[1.0 - 1j * x, 1j * x], [-1j * x, 1.0 + 1j * x]], dtype=complex
    )


def translate_modes(omega: float, effective_length: float, phase_velocity: float) -> np.ndarray:
    """Diagonal propagation phases across the resonator length."""
    if not omega > 0:
        raise DomainError("translate_modes requires omega > 0")
    phase = np.exp(1j * omega / phase_velocity * effective_length)
    return np.array([[phase, 0.0], [0.0, np.conj(phase)]], dtype=complex)


def _round_trip_phase(omega, spec: ResonatorSpec):
    # k d_eff expressed through the base mode: k d_eff = 2 pi omega / omega_0.
    return np.exp(4j * math.pi * np.asarray(omega, dtype=float) / spec.base_mode)


def _guard_denominator(den, omega):
    bad = np.abs(den) < DENOMINATOR_FLOOR
    if np.any(bad):
        w = np.asarray(omega, dtype=float)
        first = float(w.reshape(-1)[np.flatnonzero(np.ravel(bad))[0]]) if w.ndim else float(w)
        raise SingularFrequencyError(first)


def reflection_res(omega, spec: ResonatorSpec):
    """Elastic reflection of the gap-coupled resonator, unit modulus."""
    w = np.asarray(omega, dtype=float)
    scalar = w.ndim == 0
    if np.any(w <= 0):
        raise DomainError("reflection_res requires omega > 0")
    ratio = 2j * w / spec.coupling
    phase = _round_trip_phase(w, spec)
    den = (1.0 - ratio) + phase
    _guard_denominator(den, w)
    out = (1.0 + (1.0 + ratio) * phase) / den
    return complex(out) if scalar else out


def response_ares(omega, spec: ResonatorSpec):
    """Resonator response to a waveguide input; peaks at the mode frequencies."""
    w = np.asarray(omega, dtype=float)
    scalar = w.ndim == 0
    if np.any(w <= 0):
        raise DomainError("response_ares requires omega > 0")
    ratio = 2j * w / spec.coupling
    half_phase = np.exp(2j * math.pi * w / spec.base_mode)
    den = (1.0 - ratio) + half_phase**2
    _guard_denominator(den, w)
    out = ratio * half_phase / den
    return complex(out) if scalar else out


def _mode_equation(theta: float, rhs_scale: float) -> float:
    # Root condition tan(theta) = rhs_scale / theta with theta = 2 pi w / w0.
    return math.tan(theta) - rhs_scale / theta


def _bracket_and_solve(branch: int, rhs_scale: float) -> float:
    base = branch * math.pi
    top = base + math.pi / 2.0

    lo_off = math.pi / 2.0 * 1e-3
    while _mode_equation(base + lo_off, rhs_scale) >= 0.0:
        lo_off /= 16.0
        if lo_off < 1e-280:
            raise BracketError(branch)
    hi_off = math.pi / 2.0 * 1e-3
    while _mode_equation(top - hi_off, rhs_scale) <= 0.0:
        hi_off /= 16.0
        if hi_off < 1e-280:
            raise BracketError(branch)

    theta = brentq(
        _mode_equation,
        base + lo_off,
        top - hi_off,
        args=(rhs_scale,),
        xtol=1e-300,
        rtol=8.9e-16,
        maxiter=200,
    )
    # Newton polish; the equation is monotone on the branch so this only tightens.
    for _ in range(2):
        tan = math.tan(theta)
        f = tan - rhs_scale / theta
        fprime = 1.0 + tan * tan + rhs_scale / theta**2
        step = f / fprime
        if base < theta - step < top:
            theta -= step
    return theta


def find_modes(spec: ResonatorSpec, n_max: int) -> ModeTable:
    """First n_max + 1 resonant modes with widths and quality factors.

    Each mode n is the root of tan(2 pi w / w0) = w_c / w on its own branch,
    bracketed on (n pi, n pi + pi/2) in the variable 2 pi w / w0 and refined
    to machine precision. Widths follow the quadratic law in mode frequency;
    the quality factor is frequency over width.
    """
    if n_max < 0:
        raise DomainError("n_max must be non-negative")
    rhs_scale = 2.0 * math.pi * spec.coupling / spec.base_mode
    modes = []
    for n in range(n_max + 1):
        theta = _bracket_and_solve(n, rhs_scale)
        freq = theta * spec.base_mode / (2.0 * math.pi)
        width = spec.base_mode / math.pi * (freq / spec.coupling) ** 2
        modes.append(Mode(index=n, frequency=freq, width=width, quality=freq / width))
    return ModeTable(modes=tuple(modes))


def mode_pole(
    spec: ResonatorSpec,
    mode_index: int = 0,
    table: ModeTable | None = None,
) -> complex:
    """Complex pole of the resonator response for one mode.

    The transcendental roots and the quadratic width law are leading-order
    approximations with relative error of order w_n/w_c; the pole of the
    response denominator is the exact mode position and decay rate
    (frequency Re p, width -2 Im p). Newton iteration seeded from the
    approximate mode.
    """
    if table is None:
        table = find_modes(spec, mode_index)
    mode = table[mode_index]
    w = complex(mode.frequency, -mode.width / 2.0)
    for _ in range(100):
        phase = np.exp(4j * math.pi * w / spec.base_mode)
        value = (1.0 - 2j * w / spec.coupling) + phase
        slope = -2j / spec.coupling + 4j * math.pi / spec.base_mode * phase
        step = value / slope
        w -= step
        if abs(step) <= 1e-15 * abs(w):
            return w
    raise BracketError(mode_index, f"pole refinement stalled on mode {mode_index}")


def epsilon_res(
    spec: ResonatorSpec,
    derived: DerivedParams,
    drive_frequency: float,
    mode_index: int = 0,
    table: ModeTable | None = None,
) -> float:
    """Resonator perturbation parameter (dL_eff/d_eff)(w_d/2)(1/Gamma_n)."""
    if table is None:
        table = find_modes(spec, mode_index)
    if mode_index >= len(table):
        raise DomainError(f"mode {mode_index} not present in the mode table")
    width = table[mode_index].width
    return derived.delta_l_eff / spec.effective_length * drive_frequency / 2.0 / width


class ResonatorKernel(ScatterKernel):
    """Scattering kernel of the resonator setup.

    The elastic part is the resonator reflection; the inelastic parts dress
    the bare pump coupling with the resonator response at each leg, the
    response being conjugated on the creation-operator leg.
    """

    def __init__(
        self,
        spec: ResonatorSpec,
        derived: DerivedParams,
        params: CircuitParams,
        constants: PhysicalConstants = CODATA,
    ):
        self.spec = spec
        self.derived = derived
        self.params = params
        self.constants = constants
        self.drive_frequency = params.drive_frequency
        self.mode_table = find_modes(spec, _MODES_FOR_KERNEL)
        self.resonant_mode = self.mode_table.nearest(params.drive_frequency / 2.0)
        self.small_parameter = epsilon_res(
            spec,
            derived,
            params.drive_frequency,
            mode_index=self.resonant_mode.index,
            table=self.mode_table,
        )
        # Bare (mirror-level) perturbation parameter, used for the sqrt scale.
        self._bare_epsilon = small_parameter(
            derived.delta_l_eff, params.phase_velocity, params.drive_frequency
        )

    @property
    def kernel_id(self) -> str:
        return "resonator"

    def quad_breakpoints(self) -> np.ndarray:
        """Mode frequencies inside (0, w_d), useful as quadrature split points."""
        freqs = self.mode_table.frequencies()
        inside = freqs[(freqs > 0) & (freqs < self.drive_frequency)]
        return np.sort(np.concatenate([inside, self.drive_frequency - inside]))

    def _pump(self, omega_a, omega_b):
        return pump_coupling(
            omega_a, omega_b, self.derived.delta_l_eff, self.params.phase_velocity
        )

    def elastic(self, omega):
        return reflection_res(omega, self.spec)

    def sideband_up(self, omega):
        w = np.asarray(omega, dtype=float)
        scalar = w.ndim == 0
        out = self._pump(w, w + self.drive_frequency) * response_ares(
            w, self.spec
        ) * response_ares(w + self.drive_frequency, self.spec)
        return complex(out) if scalar else out

    def sideband_down(self, omega):
        w = np.asarray(omega, dtype=float)
        scalar = w.ndim == 0
        mask = w > self.drive_frequency
        safe = np.where(mask, w - self.drive_frequency, self.drive_frequency)
        out = np.where(
            mask,
            self._pump(w, safe) * response_ares(w, self.spec) * response_ares(safe, self.spec),
            0.0 + 0.0j,
        )
        return complex(out) if scalar else out

    def anomalous(self, omega):
        w = np.asarray(omega, dtype=float)
        scalar = w.ndim == 0
        mask = (w > 0) & (w < self.drive_frequency)
        partner = np.where(mask, self.drive_frequency - w, self.drive_frequency / 2.0)
        out = np.where(
            mask,
            np.conj(self._pump(w, partner))
            * response_ares(w, self.spec)
            * np.conj(response_ares(partner, self.spec)),
            0.0 + 0.0j,
        )
        return complex(out) if scalar else out


def resonator_kernel(
    spec: ResonatorSpec,
    derived: DerivedParams,
    params: CircuitParams,
    constants: PhysicalConstants = CODATA,
) -> ResonatorKernel:
    """Build the resonator kernel, enforcing perturbative validity."""
    kernel = ResonatorKernel(spec, derived, params, constants)
    eps = kernel.small_parameter
    if eps >= 1.0:
        raise ModelError(
            f"resonator perturbation parameter {eps:.3f} >= 1: above the "
            "parametric threshold, where the first-order kernel diverges"
        )
    if eps > 0.5:
        warnings.warn(
            f"resonator perturbation parameter {eps:.3f} is large; "
            "first-order results degrade near threshold",
            ValidityWarning,
            stacklevel=2,
        )
    return kernel


def design_single_mode(
    target_frequency: float,
    target_q: float,
    derived: DerivedParams,
    params: CircuitParams,
    tolerance: float = DESIGN_TOLERANCE,
    max_iter: int = 500,
    placement: str = "root",
) -> ResonatorSpec:
    """Invert the mode structure: place mode 0 at a target (frequency, Q).

    Damped fixed-point iteration on (omega_0, omega_c); converged when both
    the realized mode-0 frequency and quality match the targets to the
    requested relative tolerance.

    ``placement`` selects which mode-0 notion hits the targets: the
    transcendental root with the quadratic width law (``"root"``), or the
    exact response pole (``"pole"``), whose frequency and decay rate differ
    from the closed forms at relative order w_0/w_c. Pole placement is the
    right choice when comparing lineshapes against single-pole models.
    """
    if not target_frequency > 0 or not target_q > 0:
        raise DomainError("targets must be strictly positive")
    if placement not in ("root", "pole"):
        raise DomainError(f"unknown placement {placement!r}")
    spec = _design_root(target_frequency, target_q, derived, params, tolerance, max_iter)
    if placement == "root":
        return spec

    freq_knob, q_knob = target_frequency, target_q
    for _ in range(max_iter):
        pole = mode_pole(spec)
        realized_f = pole.real
        realized_q = target_frequency / (-2.0 * pole.imag)
        if (
            abs(realized_f - target_frequency) <= tolerance * target_frequency
            and abs(realized_q - target_q) <= tolerance * target_q
        ):
            return spec
        freq_knob -= 0.8 * (realized_f - target_frequency)
        q_knob *= (target_q / realized_q) ** 0.8
        spec = _design_root(freq_knob, q_knob, derived, params, tolerance, max_iter)
    raise ModelError("pole placement did not converge")


def _design_root(
    target_frequency: float,
    target_q: float,
    derived: DerivedParams,
    params: CircuitParams,
    tolerance: float,
    max_iter: int,
) -> ResonatorSpec:
    base = 4.0 * target_frequency
    damping = 0.5
    for _ in range(max_iter):
        coupling = math.sqrt(target_q * base * target_frequency / math.pi)
        theta = math.atan2(coupling, target_frequency)
        base_new = 2.0 * math.pi * target_frequency / theta
        if abs(base_new - base) <= tolerance * base:
            base = base_new
            break
        base += damping * (base_new - base)
    coupling = math.sqrt(target_q * base * target_frequency / math.pi)
    spec = ResonatorSpec.from_targets(coupling, base, derived, params)
    mode = find_modes(spec, 0)[0]
    if abs(mode.frequency - target_frequency) > 100 * tolerance * target_frequency:
        raise ModelError(
            f"mode placement failed to converge: got {mode.frequency:.6e}, "
            f"wanted {target_frequency:.6e}"
        )
    return spec


def design_two_mode(
    target_q0: float,
    derived: DerivedParams,
    params: CircuitParams,
    tolerance: float = DESIGN_TOLERANCE,
    max_iter: int = 500,
) -> ResonatorSpec:
    """Place modes 0 and 1 so their frequencies sum to the drive frequency.

    Mode 0 is additionally constrained to the target quality factor. Damped
    fixed-point iteration, scaling the base mode by the frequency-sum
    mismatch and refreshing the coupling from the Q constraint.
    """
    drive = params.drive_frequency
    base = 1.4 * drive
    coupling = math.sqrt(target_q0 * base * 0.3 * drive / math.pi)
    damping = 0.6
    for _ in range(max_iter):
        spec = ResonatorSpec.from_targets(coupling, base, derived, params)
        table = find_modes(spec, 1)
        mode_sum = table[0].frequency + table[1].frequency
        base_new = base * drive / mode_sum
        coupling_new = math.sqrt(target_q0 * base * table[0].frequency / math.pi)
        done = (
            abs(base_new - base) <= tolerance * base
            and abs(coupling_new - coupling) <= tolerance * coupling
        )
        base += damping * (base_new - base)
        coupling += damping * (coupling_new - coupling)
        if done:
            break
    else:
        raise ModelError("two-mode placement did not converge")
    return ResonatorSpec.from_targets(coupling, base, derived, params)
