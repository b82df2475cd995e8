"""Canonical-ensemble quantities for a spectrum at a given temperature.

All Boltzmann factors are computed relative to the minimum energy (which
may be the negative bound state), so partition sums never overflow; the
partition function is therefore stored as a logarithm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels
from .errors import TruncationError, ValidationError
from .physconst import CODATA2018, beta
from .spectrum import Spectrum

DEFAULT_TAIL_TOL = 1e-12
AUTO_N_MAX_LIMIT = 2000


@dataclass(frozen=True)
class ThermalState:
    """Occupation probabilities and derived quantities at one temperature.

    `energies` lists every included level ascending (bound state first when
    present) and `indices` the matching labels: 0 for the bound state,
    1..n for the positive levels.  `log_partition` is ln Z of the true,
    unshifted partition function.
    """

    temperature: float
    indices: np.ndarray
    energies: np.ndarray
    probabilities: np.ndarray
    log_partition: float
    internal_u: float
    entropy_s: float
    truncation_n: int
    tail_bound: float

    @property
    def partition_z(self) -> float:
        """exp(log_partition); may overflow to inf for deep bound states."""
        try:
            return math.exp(self.log_partition)
        except OverflowError:
            return math.inf


def thermal_state(spectrum: Spectrum, temperature: float,
                  tail_tol: float = DEFAULT_TAIL_TOL) -> ThermalState:
    """Boltzmann state over the spectrum's levels (bound state included).

    Raises TruncationError when the highest included level still carries a
    weight fraction >= tail_tol, i.e. the spectrum is too short for this
    temperature.
    """
    if tail_tol <= 0.0:
        raise ValidationError("tail_tol must be positive")
    e = spectrum.state_energies()
    b = beta(temperature)
    w, z_shift, m1, tail = _kernels.boltzmann_weights(e, b)
    if tail >= tail_tol:
        n_now = len(spectrum.energies)
        scale = b * (e[-1] - e[0])
        if scale > 0.0 and tail > tail_tol:
            grow = math.sqrt(1.0 + math.log(tail / tail_tol) / scale)
            suggestion = max(n_now + 1, math.ceil(n_now * grow))
        else:
            suggestion = 2 * n_now
        raise TruncationError(
            f"spectrum of {n_now} levels is too short at T={temperature:g} K: "
            f"tail weight {tail:.3e} >= tail_tol {tail_tol:.3e}; "
            f"raise n_max to about {suggestion}",
            suggested_n_max=suggestion,
        )
    probs = w / z_shift
    mean_excess = m1 / z_shift
    u = float(e[0] + mean_excess)
    kb = CODATA2018.boltzmann
    s = kb * (math.log(z_shift) + b * mean_excess)
    log_z = math.log(z_shift) - b * e[0]
    if spectrum.bound_state is None:
        indices = np.arange(1, len(e) + 1)
    else:
        indices = np.arange(0, len(e))  # 0 labels the bound state
    return ThermalState(
        temperature=temperature,
        indices=indices,
        energies=e,
        probabilities=probs,
        log_partition=log_z,
        internal_u=u,
        entropy_s=float(s),
        truncation_n=len(spectrum.energies),
        tail_bound=float(tail),
    )


def thermal_state_auto(builder: Callable[[int], Spectrum], temperature: float,
                       tail_tol: float = DEFAULT_TAIL_TOL,
                       n_max: int = 200,
                       n_limit: int = AUTO_N_MAX_LIMIT) -> ThermalState:
    """thermal_state with automatic spectrum extension.

    `builder(n)` must return the spectrum re-solved with n levels.  The
    level count doubles (or jumps to the truncation error's suggestion)
    until the tail criterion holds or `n_limit` is exceeded.
    """
    n = n_max
    while True:
        try:
            return thermal_state(builder(n), temperature, tail_tol)
        except TruncationError as err:
            nxt = min(n_limit, max(2 * n, err.suggested_n_max))
            if nxt <= n:
                raise
            n = nxt


def entropy_continuum_isw(gamma_scale: float, inverse_energy: float) -> float:
    """Continuum-limit entropy of a bare box: k_B/2 + k_B ln(sqrt(pi/(beta gamma))/2).

    Replaces the level sum by an integral, valid for beta*gamma << 1.
    """
    if gamma_scale <= 0.0 or inverse_energy <= 0.0:
        raise ValidationError("gamma and beta must be positive")
    kb = CODATA2018.boltzmann
    x = inverse_energy * gamma_scale
    return kb * (0.5 + math.log(0.5 * math.sqrt(math.pi / x)))
