"""Physical constants and the unit conversions used throughout the package.

All internal computation is carried out in SI units (joules, kelvin,
metres); electronvolts and nanometres appear only at I/O boundaries.
Constants follow CODATA 2018, where h, k_B and e are exact by definition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Constants:
    """Fundamental constants in SI units (CODATA 2018)."""

    planck: float = 6.62607015e-34          # J s, exact
    electron_mass: float = 9.1093837015e-31  # kg
    boltzmann: float = 1.380649e-23          # J/K, exact
    electronvolt: float = 1.602176634e-19    # J, exact
    hbar: float = field(init=False)

    def __post_init__(self) -> None:
        for name in ("planck", "electron_mass", "boltzmann", "electronvolt"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        object.__setattr__(self, "hbar", self.planck / (2.0 * math.pi))


CODATA2018 = Constants()


def gamma(length: float, mass: float = CODATA2018.electron_mass) -> float:
    """Ground-level energy scale h^2/(8 m L^2) of a hard-wall box, in joules.

    Equals the n = 1 level of the bare box, so every bare level is
    gamma(L) * n**2.
    """
    if length <= 0.0:
        raise ValueError("length must be positive")
    if mass <= 0.0:
        raise ValueError("mass must be positive")
    h = CODATA2018.planck
    return h * h / (8.0 * mass * length * length)


def beta(temperature: float) -> float:
    """Inverse thermal energy 1/(k_B T), in 1/J."""
    if temperature <= 0.0:
        raise ValueError("temperature must be positive")
    return 1.0 / (CODATA2018.boltzmann * temperature)


def to_ev(energy_j: float) -> float:
    """Convert joules to electronvolts."""
    return energy_j / CODATA2018.electronvolt


def from_ev(energy_ev: float) -> float:
    """Convert electronvolts to joules."""
    return energy_ev * CODATA2018.electronvolt
