"""Circuit parameters of the SQUID-terminated waveguide and derived statics.

The user supplies junction and line parameters (:class:`CircuitParams`);
:func:`derive_params` turns them into the static quantities the scattering
calculations consume: Josephson energies at the bias point, the effective
mirror length and its modulation amplitude, and the SQUID plasma frequency.

All frequencies in this package are angular (rad/s). Helper constructors
that accept GHz live at the CLI/config boundary, not here.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from .constants import CODATA, PhysicalConstants
from .errors import DomainError, ValidityWarning

# Soft validity thresholds for the perturbative treatment. The underlying
# requirements are k_w * L_eff << 1 and omega_d << omega_s; these cutoffs
# decide when to warn and are configurable per call.
DEFAULT_K_LEFF_THRESHOLD = 0.3
DEFAULT_DRIVE_PLASMA_RATIO = 0.8


@dataclass(frozen=True)
class CircuitParams:
    """User-facing circuit parameters.

    Attributes
    ----------
    critical_current:
        Critical current of each junction in the SQUID loop (A).
    junction_capacitance:
        Effective capacitance of the SQUID treated as a single junction (F).
    phase_velocity:
        Propagation velocity in the waveguide (m/s).
    char_impedance:
        Characteristic impedance of the line (Ohm).
    drive_frequency:
        Angular frequency of the harmonic flux drive (rad/s).
    ej_bias_ratio:
        Static bias point expressed as E_J0 / E_J (single-junction units).
        Mutually exclusive with ``ext_flux_bias``.
    ej_drive_ratio:
        Drive amplitude expressed as dE_J / E_J0; must satisfy 0 <= r < 1.
    ext_flux_bias:
        External flux bias (Wb), the alternative way to fix the bias point.
    """

    critical_current: float
    junction_capacitance: float
    phase_velocity: float
    char_impedance: float
    drive_frequency: float
    ej_bias_ratio: float | None = None
    ej_drive_ratio: float = 0.0
    ext_flux_bias: float | None = None

    def __post_init__(self):
        positive = {
            "critical_current": self.critical_current,
            "junction_capacitance": self.junction_capacitance,
            "phase_velocity": self.phase_velocity,
            "char_impedance": self.char_impedance,
            "drive_frequency": self.drive_frequency,
        }
        for name, value in positive.items():
            if not value > 0:
                raise DomainError(f"{name} must be strictly positive, got {value!r}")
        if not 0.0 <= self.ej_drive_ratio < 1.0:
            raise DomainError(
                f"ej_drive_ratio must lie in [0, 1), got {self.ej_drive_ratio!r}"
            )
        if (self.ej_bias_ratio is None) == (self.ext_flux_bias is None):
            raise DomainError(
                "exactly one of ej_bias_ratio and ext_flux_bias must be given"
            )
        if self.ej_bias_ratio is not None and not self.ej_bias_ratio > 0:
            raise DomainError("ej_bias_ratio must be strictly positive")

    @property
    def line_inductance(self) -> float:
        """Series inductance per unit length, L0 = Z0 / v (H/m)."""
        return self.char_impedance / self.phase_velocity

    @property
    def line_capacitance(self) -> float:
        """Shunt capacitance per unit length, C0 = 1 / (Z0 v) (F/m)."""
        return 1.0 / (self.char_impedance * self.phase_velocity)


@dataclass(frozen=True)
class DerivedParams:
    """Static quantities computed from :class:`CircuitParams`.

    ``validity_warnings`` records which soft validity checks fired while
    deriving; the same messages are also emitted as :class:`ValidityWarning`.
    """

    e_j: float
    e_j0: float
    delta_e_j: float
    l_eff0: float
    delta_l_eff: float
    omega_s: float
    validity_warnings: tuple[str, ...] = field(default=())


def josephson_energy(
    critical_current: float, constants: PhysicalConstants = CODATA
) -> float:
    """Josephson energy of a single junction, I_c Phi_0 / 2pi (J)."""
    if not critical_current > 0:
        raise DomainError(f"critical current must be positive, got {critical_current!r}")
    return critical_current * constants.reduced_flux_quantum


def tunable_josephson_energy(
    e_j: float, ext_flux: float, constants: PhysicalConstants = CODATA
) -> float:
    """Flux-tuned Josephson energy of the SQUID, 2 E_J |cos(pi Phi/Phi_0)|.

    Even and Phi_0-periodic in the external flux; vanishes at half-integer
    flux quanta. Any real ``ext_flux`` is valid.
    """
    if not e_j > 0:
        raise DomainError(f"junction energy must be positive, got {e_j!r}")
    return 2.0 * e_j * abs(math.cos(math.pi * ext_flux / constants.flux_quantum))


def effective_length(
    e_j_eff: float, line_inductance: float, constants: PhysicalConstants = CODATA
) -> float:
    """Distance to the equivalent ideal mirror, (Phi_0/2pi)^2 / (E_J L0) (m)."""
    if not e_j_eff > 0 or not line_inductance > 0:
        raise DomainError("effective_length requires strictly positive inputs")
    return constants.reduced_flux_quantum**2 / (e_j_eff * line_inductance)


def plasma_frequency(
    e_j_eff: float,
    junction_capacitance: float,
    constants: PhysicalConstants = CODATA,
) -> float:
    """SQUID plasma frequency sqrt((2pi/Phi_0)^2 E_J / C_J) (rad/s)."""
    if not e_j_eff > 0 or not junction_capacitance > 0:
        raise DomainError("plasma_frequency requires strictly positive inputs")
    return math.sqrt(e_j_eff / junction_capacitance) / constants.reduced_flux_quantum


def derive_params(
    params: CircuitParams,
    constants: PhysicalConstants = CODATA,
    k_leff_threshold: float = DEFAULT_K_LEFF_THRESHOLD,
    drive_plasma_ratio: float = DEFAULT_DRIVE_PLASMA_RATIO,
) -> DerivedParams:
    """Fill every derived static quantity and run the validity checks.

    Emits a :class:`ValidityWarning` (and records the message) when the
    drive wavelength or the plasma frequency strain the approximations:
    ``k_wd * L_eff0 > k_leff_threshold`` or
    ``omega_d > drive_plasma_ratio * omega_s``.
    """
    e_j = josephson_energy(params.critical_current, constants)
    if params.ej_bias_ratio is not None:
        e_j0 = params.ej_bias_ratio * e_j
    else:
        e_j0 = tunable_josephson_energy(e_j, params.ext_flux_bias, constants)
        if e_j0 <= 0:
            raise DomainError(
                "external flux bias sits at a half flux quantum; the static "
                "Josephson energy vanishes there"
            )
    delta_e_j = params.ej_drive_ratio * e_j0

    l_eff0 = effective_length(e_j0, params.line_inductance, constants)
    delta_l_eff = l_eff0 * (delta_e_j / e_j0)
    omega_s = plasma_frequency(e_j0, params.junction_capacitance, constants)

    notes = []
    k_leff = params.drive_frequency / params.phase_velocity * l_eff0
    if k_leff > k_leff_threshold:
        notes.append(
            f"k_w*L_eff0 = {k_leff:.3f} at the drive frequency exceeds "
            f"{k_leff_threshold}; the short-length approximation is strained"
        )
    if params.drive_frequency > drive_plasma_ratio * omega_s:
        notes.append(
            f"drive frequency is {params.drive_frequency / omega_s:.3f} of the "
            f"plasma frequency (threshold {drive_plasma_ratio}); the adiabatic "
            "SQUID assumption is strained"
        )
    for note in notes:
        warnings.warn(note, ValidityWarning, stacklevel=2)

    return DerivedParams(
        e_j=e_j,
        e_j0=e_j0,
        delta_e_j=delta_e_j,
        l_eff0=l_eff0,
        delta_l_eff=delta_l_eff,
        omega_s=omega_s,
        validity_warnings=tuple(notes),
    )
