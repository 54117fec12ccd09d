"""Frequency-domain scattering at the SQUID boundary of a semi-infinite line.

Static reflection (exact and short-length forms), the first-order sideband
coupling produced by a weak harmonic flux drive, and the mirror-setup
:class:`ScatterKernel` built from them. The kernel abstraction is shared
with the resonator setup: any kernel exposes the elastic coefficient, the
two first-order sidebands, and the anomalous (pair-creating) coefficient,
which is all the observables layer needs.
"""

from __future__ import annotations

import abc
import warnings

import numpy as np

from .circuit import CircuitParams, DerivedParams
from .constants import CODATA, PhysicalConstants
from .errors import DomainError, ModelError, ValidityWarning

EPSILON_SOFT_LIMIT = 0.1  # warn above this; hard failure at 1.0


def _asfloat(omega):
    arr = np.asarray(omega, dtype=float)
    return arr, arr.ndim == 0


def _ret(value, scalar):
    return complex(value) if scalar else value


def reflection_full(
    omega,
    derived: DerivedParams,
    params: CircuitParams,
    constants: PhysicalConstants = CODATA,
):
    """Exact static reflection coefficient, junction capacitance included.

    Unit modulus for every positive frequency: the numerator and denominator
    are complex conjugates up to sign.
    """
    w, scalar = _asfloat(omega)
    if np.any(w <= 0):
        raise DomainError("reflection_full requires omega > 0")
    spring = derived.e_j0 / constants.reduced_flux_quantum**2 - w**2 * params.junction_capacitance
    k_over_l0 = w / params.phase_velocity / params.line_inductance
    return _ret(-(spring + 1j * k_over_l0) / (spring - 1j * k_over_l0), scalar)


def reflection_simplified(omega, l_eff0: float, phase_velocity: float):
    """Short-length reflection -(1 + i k L_eff)/(1 - i k L_eff).

    The exact Moebius ratio is returned rather than its exponential
    approximation, so the modulus is exactly 1.
    """
    w, scalar = _asfloat(omega)
    if np.any(w <= 0):
        raise DomainError("reflection_simplified requires omega > 0")
    x = w / phase_velocity * l_eff0
    return _ret(-(1.0 + 1j * x) / (1.0 - 1j * x), scalar)


def pump_coupling(omega_a, omega_b, delta_l_eff: float, phase_velocity: float):
    """First-order sideband coupling i (dL_eff/v) sqrt(w' w'') on w', w'' > 0.

    Symmetric in the two frequencies and identically zero when either one
    is non-positive, which encodes the step-function support.
    """
    wa, sa = _asfloat(omega_a)
    wb, sb = _asfloat(omega_b)
    support = (wa > 0) & (wb > 0)
    product = np.where(support, wa * wb, 0.0)
    out = 1j * (delta_l_eff / phase_velocity) * np.sqrt(product)
    return _ret(out, sa and sb)


def small_parameter(
    delta_l_eff: float, phase_velocity: float, drive_frequency: float
) -> float:
    """Perturbation parameter (dL_eff/v)(w_d/2).

    Equals the largest anomalous coupling magnitude, reached when the pair
    frequencies are both w_d/2.
    """
    if delta_l_eff < 0 or not phase_velocity > 0 or not drive_frequency > 0:
        raise DomainError("small_parameter requires non-negative dL_eff and positive v, w_d")
    return delta_l_eff / phase_velocity * drive_frequency / 2.0


class ScatterKernel(abc.ABC):
    """Frequency-parameterized Bogoliubov map of a driven boundary.

    Output operators relate to input operators as

        a_out(w) = elastic(w) a_in(w) + sideband_up(w) a_in(w + w_d)
                 + sideband_down(w) a_in(w - w_d)
                 + anomalous(w) a_in^dag(w_d - w)

    All coefficient methods accept scalars or arrays of positive
    frequencies and are pure, so grids may be evaluated in parallel.
    """

    drive_frequency: float
    small_parameter: float

    @property
    @abc.abstractmethod
    def kernel_id(self) -> str:
        """Short tag identifying the setup, used in output metadata."""

    @abc.abstractmethod
    def elastic(self, omega):
        """Coefficient of a_in(w) in a_out(w)."""

    @abc.abstractmethod
    def sideband_up(self, omega):
        """Coefficient of a_in(w + w_d)."""

    @abc.abstractmethod
    def sideband_down(self, omega):
        """Coefficient of a_in(w - w_d); vanishes for w <= w_d."""

    @abc.abstractmethod
    def anomalous(self, omega):
        """Coefficient of a_in^dag(w_d - w); vanishes for w >= w_d."""


class MirrorKernel(ScatterKernel):
    """Single-mirror (semi-infinite waveguide) scattering kernel.

    With the reference plane at the effective mirror the elastic part is
    exactly -1 and the sideband/anomalous parts carry no propagation
    phases. ``reference_plane="squid"`` restores the phases accumulated
    between the SQUID and the effective mirror by attaching
    exp(i k L_eff0) per field leg (conjugated on the creation-operator
    leg), and uses -exp(2 i k L_eff0) for the elastic part.
    """

    def __init__(
        self,
        derived: DerivedParams,
        params: CircuitParams,
        constants: PhysicalConstants = CODATA,
        reference_plane: str = "mirror",
    ):
        if reference_plane not in ("mirror", "squid"):
            raise DomainError(f"unknown reference plane {reference_plane!r}")
        self.derived = derived
        self.params = params
        self.constants = constants
        self.reference_plane = reference_plane
        self.drive_frequency = params.drive_frequency
        self.small_parameter = small_parameter(
            derived.delta_l_eff, params.phase_velocity, params.drive_frequency
        )

    @property
    def kernel_id(self) -> str:
        return "mirror" if self.reference_plane == "mirror" else "mirror-squid-plane"

    def _phase(self, omega):
        # One-leg propagation phase between the SQUID and the effective mirror.
        return np.exp(
            1j * np.asarray(omega, dtype=float) / self.params.phase_velocity * self.derived.l_eff0
        )

    def _pump(self, omega_a, omega_b):
        return pump_coupling(
            omega_a, omega_b, self.derived.delta_l_eff, self.params.phase_velocity
        )

    def elastic(self, omega):
        w, scalar = _asfloat(omega)
        if np.any(w <= 0):
            raise DomainError("kernel evaluation requires omega > 0")
        if self.reference_plane == "mirror":
            return _ret(np.full_like(w, -1.0, dtype=complex), scalar)
        return _ret(-self._phase(w) ** 2, scalar)

    def sideband_up(self, omega):
        w, scalar = _asfloat(omega)
        coeff = self._pump(w, w + self.drive_frequency)
        if self.reference_plane == "squid":
            coeff = coeff * self._phase(w) * self._phase(w + self.drive_frequency)
        return _ret(coeff, scalar)

    def sideband_down(self, omega):
        w, scalar = _asfloat(omega)
        coeff = self._pump(w, w - self.drive_frequency)
        if self.reference_plane == "squid":
            coeff = coeff * self._phase(w) * self._phase(np.abs(w - self.drive_frequency))
        return _ret(coeff, scalar)

    def anomalous(self, omega):
        w, scalar = _asfloat(omega)
        coeff = np.conj(self._pump(w, self.drive_frequency - w))
        if self.reference_plane == "squid":
            # The creation-operator leg carries the conjugate phase.
            coeff = coeff * self._phase(w) * np.conj(
                self._phase(np.abs(self.drive_frequency - w))
            )
        return _ret(coeff, scalar)


def mirror_kernel(
    derived: DerivedParams,
    params: CircuitParams,
    constants: PhysicalConstants = CODATA,
    reference_plane: str = "mirror",
) -> MirrorKernel:
    """Build the single-mirror kernel, enforcing perturbative validity."""
    kernel = MirrorKernel(derived, params, constants, reference_plane)
    eps = kernel.small_parameter
    if eps >= 1.0:
        raise ModelError(
            f"perturbation parameter {eps:.3f} >= 1; the first-order kernel is meaningless"
        )
    if eps > EPSILON_SOFT_LIMIT:
        warnings.warn(
            f"perturbation parameter {eps:.3f} exceeds {EPSILON_SOFT_LIMIT}; "
            "first-order results degrade",
            ValidityWarning,
            stacklevel=2,
        )
    return kernel
