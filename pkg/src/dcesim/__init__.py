"""Simulator for the dynamical Casimir effect in SQUID-terminated waveguides."""

from .constants import CODATA, PhysicalConstants
from .circuit import (
    CircuitParams,
    DerivedParams,
    derive_params,
    effective_length,
    josephson_energy,
    plasma_frequency,
    tunable_josephson_energy,
)
from .errors import (
    BracketError,
    ConfigError,
    DomainError,
    ModelError,
    QuadratureError,
    SingularFrequencyError,
    SolverError,
    ValidityWarning,
)
from .scattering import (
    MirrorKernel,
    ScatterKernel,
    mirror_kernel,
    pump_coupling,
    reflection_full,
    reflection_simplified,
    small_parameter,
)
from .resonator import (
    Mode,
    ModeTable,
    ResonatorKernel,
    ResonatorSpec,
    coupling_transform,
    design_single_mode,
    design_two_mode,
    epsilon_res,
    find_modes,
    mode_pole,
    reflection_res,
    resonator_kernel,
    response_ares,
    translate_modes,
)
from .observables import (
    MirrorMotionParams,
    ThermalState,
    coherence_g2,
    dce_spectrum_shape,
    pair_correlation,
    photon_flux,
    photon_rate,
    squeezing_spectrum,
    thermal_occupation,
    total_squeezing,
)
from .numsolver import (
    BogoliubovMatrix,
    DriveSpec,
    FrequencyGrid,
    assemble,
    drive_kernel_g,
    numerical_flux,
    numerical_flux_sweep,
    solve,
    solve_harmonic,
)
from .pomap import POParams, equivalence_report, po_kernel, po_params
from .series import SpectrumSeries

__version__ = "0.1.0"

__all__ = [
    "CODATA",
    "PhysicalConstants",
    "CircuitParams",
    "DerivedParams",
    "derive_params",
    "josephson_energy",
    "tunable_josephson_energy",
    "effective_length",
    "plasma_frequency",
    "DomainError",
    "ConfigError",
    "ModelError",
    "SolverError",
    "SingularFrequencyError",
    "BracketError",
    "QuadratureError",
    "ValidityWarning",
    "ScatterKernel",
    "MirrorKernel",
    "mirror_kernel",
    "reflection_full",
    "reflection_simplified",
    "pump_coupling",
    "small_parameter",
    "ResonatorSpec",
    "ResonatorKernel",
    "Mode",
    "ModeTable",
    "coupling_transform",
    "translate_modes",
    "reflection_res",
    "response_ares",
    "find_modes",
    "mode_pole",
    "epsilon_res",
    "resonator_kernel",
    "design_single_mode",
    "design_two_mode",
    "ThermalState",
    "MirrorMotionParams",
    "thermal_occupation",
    "photon_flux",
    "pair_correlation",
    "coherence_g2",
    "squeezing_spectrum",
    "total_squeezing",
    "photon_rate",
    "dce_spectrum_shape",
    "FrequencyGrid",
    "DriveSpec",
    "BogoliubovMatrix",
    "drive_kernel_g",
    "assemble",
    "solve",
    "solve_harmonic",
    "numerical_flux",
    "numerical_flux_sweep",
    "POParams",
    "po_params",
    "po_kernel",
    "equivalence_report",
    "SpectrumSeries",
]
