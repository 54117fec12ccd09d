"""Physical constants used throughout the simulator.

All quantities are SI. The defaults are CODATA values; alternative values
can be injected through an explicit :class:`PhysicalConstants` instance,
which is occasionally useful in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    """Bundle of the physical constants the circuit model depends on.

    Attributes
    ----------
    flux_quantum:
        Magnetic flux quantum h/2e (Wb).
    hbar:
        Reduced Planck constant (J s).
    boltzmann:
        Boltzmann constant (J/K).
    light_speed:
        Vacuum speed of light (m/s).
    """

    flux_quantum: float = 2.067833848e-15
    hbar: float = 1.054571817e-34
    boltzmann: float = 1.380649e-23
    light_speed: float = 299792458.0

    def __post_init__(self):
        for name in ("flux_quantum", "hbar", "boltzmann", "light_speed"):
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be strictly positive")

    @property
    def reduced_flux_quantum(self) -> float:
        """Phi_0 / 2pi, the natural flux scale of a Josephson junction."""
        return self.flux_quantum / (2.0 * math.pi)


CODATA = PhysicalConstants()
