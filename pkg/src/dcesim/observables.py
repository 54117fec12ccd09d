"""Measurable output-field quantities computed from any scattering kernel.

Photon-flux density, two-photon correlations, the second-order coherence
function, quadrature squeezing spectra, and the elementary moving-mirror
rate estimates. Everything below consumes the four kernel coefficient
functions only, so the mirror and resonator setups share one code path.

Spectra are dimensionless mode occupations; overall proportionality
constants relating them to detector voltage levels are dropped
consistently and noted in output metadata.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .constants import CODATA, PhysicalConstants
from .errors import DomainError, QuadratureError
from .scattering import ScatterKernel
from .series import SpectrumSeries

QUAD_EPSABS = 1e-10
QUAD_EPSREL = 1e-10
QUAD_LIMIT = 400


@dataclass(frozen=True)
class ThermalState:
    """Thermal input field at a given temperature (K)."""

    temperature: float

    def __post_init__(self):
        if self.temperature < 0:
            raise DomainError("temperature must be non-negative")

    def occupation(self, omega, constants: PhysicalConstants = CODATA):
        return thermal_occupation(omega, self.temperature, constants)


@dataclass(frozen=True)
class MirrorMotionParams:
    """Oscillating-mirror parameters for the elementary rate estimates.

    The peak speed amplitude * drive must stay below the speed of light.
    """

    amplitude: float
    mirror_drive: float
    cavity_quality: float | None = None

    def __post_init__(self):
        if not self.amplitude > 0 or not self.mirror_drive > 0:
            raise DomainError("amplitude and mirror drive must be positive")
        if self.amplitude * self.mirror_drive >= CODATA.light_speed:
            raise DomainError("peak mirror speed must stay below the speed of light")
        if self.cavity_quality is not None and not self.cavity_quality > 0:
            raise DomainError("cavity quality must be positive when given")

    @property
    def max_speed(self) -> float:
        return self.amplitude * self.mirror_drive


def thermal_occupation(omega, temperature: float, constants: PhysicalConstants = CODATA):
    """Bose-Einstein occupation of the mode at omega; zero at T = 0."""
    w = np.asarray(omega, dtype=float)
    scalar = w.ndim == 0
    if np.any(w <= 0):
        raise DomainError("thermal_occupation requires omega > 0")
    if temperature < 0:
        raise DomainError("temperature must be non-negative")
    if temperature == 0:
        out = np.zeros_like(w)
    else:
        x = constants.hbar * w / (constants.boltzmann * temperature)
        # expm1 keeps precision for x << 1; the clip avoids overflow for x >> 1.
        out = 1.0 / np.expm1(np.minimum(x, 700.0))
        out = np.where(x >= 700.0, 0.0, out)
    return float(out) if scalar else out


def _occupation_masked(omega, mask, temperature, constants):
    safe = np.where(mask, omega, 1.0)
    if temperature == 0:
        return np.zeros_like(safe)
    return np.where(mask, thermal_occupation(safe, temperature, constants), 0.0)


def photon_flux(
    kernel: ScatterKernel,
    temperature: float,
    omega,
    constants: PhysicalConstants = CODATA,
):
    """Output photon-flux density (mode occupation) at omega.

    Sum of the elastically reflected thermal occupation, the two thermal
    sideband conversions, and the pair-creation term; the last is both
    spontaneous and thermally stimulated by the idler occupation.
    """
    w = np.asarray(omega, dtype=float)
    scalar = w.ndim == 0
    if np.any(w <= 0):
        raise DomainError("photon_flux requires omega > 0")
    wd = kernel.drive_frequency

    n_elastic = np.abs(kernel.elastic(w)) ** 2 * _occupation_masked(
        w, np.ones_like(w, dtype=bool), temperature, constants
    )
    n_up = np.abs(kernel.sideband_up(w)) ** 2 * _occupation_masked(
        w + wd, np.ones_like(w, dtype=bool), temperature, constants
    )
    down_mask = w > wd
    n_down = np.abs(kernel.sideband_down(w)) ** 2 * _occupation_masked(
        w - wd, down_mask, temperature, constants
    )
    anom_mask = w < wd
    n_pair = np.abs(kernel.anomalous(w)) ** 2 * (
        1.0 + _occupation_masked(wd - w, anom_mask, temperature, constants)
    )
    out = n_elastic + n_up + n_down + n_pair
    return float(out) if scalar else out


def pair_correlation(
    kernel: ScatterKernel,
    temperature: float,
    delta_omega,
    constants: PhysicalConstants = CODATA,
):
    """Two-photon amplitude at frequencies symmetric about half the drive.

    Vanishes identically for a static boundary; thermal input enhances it
    by one plus the idler occupation.
    """
    d = np.asarray(delta_omega, dtype=float)
    scalar = d.ndim == 0
    half = kernel.drive_frequency / 2.0
    if np.any(d < 0) or np.any(d >= half):
        raise DomainError("pair_correlation requires 0 <= delta_omega < omega_d/2")
    lower = half - d
    upper = half + d
    occ = 1.0 + _occupation_masked(lower, np.ones_like(d, dtype=bool), temperature, constants)
    out = kernel.elastic(lower) * kernel.anomalous(upper) * occ
    return complex(out) if scalar else out


def _squeezing_values(kernel: ScatterKernel, theta: float, delta):
    d = np.asarray(delta, dtype=float)
    half = kernel.drive_frequency / 2.0
    inside = np.abs(d) < half
    upper = np.where(inside, half + d, half)
    anom = kernel.anomalous(upper)
    cross = np.exp(-2j * theta) * kernel.elastic(upper) * np.conj(anom)
    values = 1.0 + 2.0 * np.abs(anom) ** 2 + 2.0 * cross.real
    return np.where(inside, values, 1.0)


def squeezing_spectrum(
    kernel: ScatterKernel,
    theta: float,
    delta_grid,
    temperature: float = 0.0,
) -> SpectrumSeries:
    """Quadrature noise spectrum at local-oscillator phase theta.

    The local oscillator sits at half the drive frequency; ``delta_grid``
    holds detunings from it. Unity is the vacuum level; values below one
    mean squeezing. Outside the pair-creation band the spectrum is exactly
    one. Zero-temperature input is assumed.
    """
    if temperature != 0.0:
        raise DomainError("squeezing_spectrum is implemented for zero-temperature input")
    d = np.asarray(delta_grid, dtype=float)
    values = _squeezing_values(kernel, theta, d)
    return SpectrumSeries(
        axis_name="delta_omega",
        axis_unit="rad/s",
        x=d,
        columns={"squeezing": values},
        metadata={
            "kernel": kernel.kernel_id,
            "temperature_k": 0.0,
            "lo_phase_rad": float(theta),
            "normalization": "vacuum level = 1; proportionality constants dropped",
        },
    )


def total_squeezing(kernel: ScatterKernel, theta: float = math.pi / 4.0) -> float:
    """Integral of the squeezing spectrum across the pair-creation band.

    Returned in angular-frequency units; equals the bandwidth itself when
    the drive is off.
    """
    half = kernel.drive_frequency / 2.0

    def integrand(u):
        return float(_squeezing_values(kernel, theta, np.asarray(u * half)))

    points = _normalized_breakpoints(kernel, shift=True)
    value = _quad_checked(integrand, -1.0, 1.0, points)
    return value * half


def _normalized_breakpoints(kernel, shift: bool):
    hint = getattr(kernel, "quad_breakpoints", None)
    if hint is None:
        return None
    freqs = np.asarray(hint(), dtype=float)
    if freqs.size == 0:
        return None
    wd = kernel.drive_frequency
    if shift:
        # Detuning axis, normalized to half the band.
        pts = (freqs - wd / 2.0) / (wd / 2.0)
        pts = pts[(pts > -1.0) & (pts < 1.0)]
    else:
        pts = freqs / wd
        pts = pts[(pts > 0.0) & (pts < 1.0)]
    return np.sort(pts) if pts.size else None


def _quad_checked(func, a, b, points=None):
    result = quad(
        func,
        a,
        b,
        epsabs=QUAD_EPSABS,
        epsrel=QUAD_EPSREL,
        limit=QUAD_LIMIT,
        points=points,
        full_output=1,
    )
    if len(result) > 3:
        raise QuadratureError(achieved=result[1], requested=QUAD_EPSABS, message=result[3])
    value, abserr = result[0], result[1]
    if abserr > 1e3 * max(QUAD_EPSABS, QUAD_EPSREL * abs(value)):
        raise QuadratureError(achieved=abserr, requested=QUAD_EPSABS)
    return value


def _complex_quad(func, a, b, points=None):
    re = _quad_checked(lambda u: func(u).real, a, b, points)
    im = _quad_checked(lambda u: func(u).imag, a, b, points)
    return complex(re, im)


def coherence_g2(kernel: ScatterKernel, tau_grid) -> SpectrumSeries:
    """Normalized second-order coherence g2 of the pair-created field.

    Zero-temperature input. The intensity and the two pair integrals are
    evaluated over the pair-creation band by adaptive quadrature in the
    normalized frequency, so the overall flux scale cancels in the ratio.
    """
    tau = np.asarray(tau_grid, dtype=float)
    if tau.ndim != 1:
        raise DomainError("tau_grid must be one-dimensional")
    wd = kernel.drive_frequency
    points = _normalized_breakpoints(kernel, shift=False)

    # Normalize the integrands to O(1) so the absolute tolerance is meaningful.
    eps = max(kernel.small_parameter, 1e-150)
    anom_scale = eps**2
    cross_scale = eps

    def weight(u):
        return np.abs(kernel.anomalous(np.asarray(u * wd))) ** 2 / anom_scale

    def cross(u):
        if u <= 0.0 or u >= 1.0:
            return 0.0j
        return (
            math.sqrt(u * (1.0 - u))
            * kernel.elastic(np.asarray((1.0 - u) * wd))
            * kernel.anomalous(np.asarray(u * wd))
            / cross_scale
        )

    intensity = _quad_checked(lambda u: u * float(weight(u)), 0.0, 1.0, points)
    if intensity <= 0.0:
        raise DomainError("g2 is undefined for a static boundary (no pair creation)")

    g2 = np.empty_like(tau)
    for i, t in enumerate(tau):
        phase_rate = wd * t
        c1 = _complex_quad(
            lambda u: u * float(weight(u)) * np.exp(1j * u * phase_rate), 0.0, 1.0, points
        )
        c2 = _complex_quad(
            lambda u: complex(cross(u)) * np.exp(1j * u * phase_rate), 0.0, 1.0, points
        )
        # Undo the per-integrand normalizations: the pair integral carries
        # one power of the coupling where the intensity carries two.
        pair_sq = abs(c2) ** 2 * (cross_scale / anom_scale) ** 2
        g2[i] = (intensity**2 + abs(c1) ** 2 + pair_sq) / intensity**2

    return SpectrumSeries(
        axis_name="tau",
        axis_unit="s",
        x=tau,
        columns={"g2": g2},
        metadata={
            "kernel": kernel.kernel_id,
            "temperature_k": 0.0,
            "normalization": "g2 = G2 / G1(0)^2",
        },
    )


def photon_rate(motion: MirrorMotionParams, constants: PhysicalConstants = CODATA) -> float:
    """First-order photon production rate of an oscillating ideal mirror.

    Multiplied by the cavity quality factor when one is present.
    """
    ratio = motion.max_speed / constants.light_speed
    rate = motion.mirror_drive / (3.0 * math.pi) * ratio**2
    if motion.cavity_quality is not None:
        rate *= motion.cavity_quality
    return rate


def dce_spectrum_shape(
    amplitude: float,
    mirror_drive: float,
    omega,
    constants: PhysicalConstants = CODATA,
):
    """Unnormalized parabolic emission spectrum of an oscillating mirror."""
    w = np.asarray(omega, dtype=float)
    scalar = w.ndim == 0
    if np.any(w <= 0):
        raise DomainError("dce_spectrum_shape requires omega > 0")
    shape = (amplitude / constants.light_speed) ** 2 * w * (mirror_drive - w)
    out = np.where(w < mirror_drive, shape, 0.0)
    return float(out) if scalar else out
