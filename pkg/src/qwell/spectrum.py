"""Eigenvalue spectra of a hard-wall box with a delta-function impurity.

The box has length L and impenetrable walls; the impurity sits at x = p*L
with dimensionless strength f (f > 0 attractive, f < 0 repulsive; larger
|f| means a weaker impurity).  Spectra come from four routes:

  * isw_levels              -- bare box, E_n = n^2 pi^2 hbar^2 / (2 m L^2)
  * solve_spectrum_numerical -- roots of the transcendental dispersion
    relations (oscillatory branch for E > 0, hyperbolic for E < 0)
  * weak_perturb_levels     -- 1/f expansion to first or second order,
    valid for |f| >= 0.5
  * strong_perturb_levels   -- first order in f around the split sub-wells,
    valid for |f| <= 0.1; both sub-well families merged and sorted

strong_perturb_family returns a single sub-well branch without merging;
cycle evaluation uses it so that a level index tracks the same state on
both sides of a stroke.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ValidationError
from .physconst import CODATA2018

DEFAULT_N_MAX = 200
DEFAULT_TOL = 1e-12

WEAK_THRESHOLD = 0.5    # |f| >= 0.5: weak-coupling expansion applies
STRONG_THRESHOLD = 0.1  # |f| <= 0.1: strong-coupling expansion applies


class SpectrumMethod(enum.Enum):
    NUMERICAL = "numerical"
    WEAK_PERTURB1 = "weak1"
    WEAK_PERTURB2 = "weak2"
    STRONG_PERTURB1 = "strong1"
    BARE_ISW = "bare"


class CouplingRegime(enum.Enum):
    WEAK = "weak"
    STRONG = "strong"
    INTERMEDIATE = "intermediate"


@dataclass(frozen=True)
class WellSpec:
    """Hard-wall box geometry and particle mass."""

    length: float
    mass: float = CODATA2018.electron_mass

    def __post_init__(self) -> None:
        if self.length <= 0.0:
            raise ValidationError("well length must be positive")
        if self.mass <= 0.0:
            raise ValidationError("particle mass must be positive")

    @property
    def energy_scale(self) -> float:
        """hbar^2 / (2 m L^2): energy of a level with kL = 1."""
        hbar = CODATA2018.hbar
        return hbar * hbar / (2.0 * self.mass * self.length * self.length)


@dataclass(frozen=True)
class ImpuritySpec:
    """Delta impurity: dimensionless strength f and position p in [0, 1].

    f > 0 is attractive, f < 0 repulsive.  "No impurity" is represented by
    passing None wherever an ImpuritySpec is accepted, not by a sentinel
    strength.
    """

    strength_f: float
    position_p: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.strength_f) or self.strength_f == 0.0:
            raise ValidationError("impurity strength f must be finite and nonzero")
        if not 0.0 <= self.position_p <= 1.0:
            raise ValidationError("impurity position p must lie in [0, 1]")

    @property
    def attractive(self) -> bool:
        return self.strength_f > 0.0


@dataclass(frozen=True)
class Spectrum:
    """Ordered energy levels in joules, with optional negative bound state."""

    well: WellSpec
    impurity: ImpuritySpec | None
    method: SpectrumMethod
    energies: np.ndarray
    bound_state: float | None = None

    def __post_init__(self) -> None:
        e = np.asarray(self.energies, dtype=float)
        e.flags.writeable = False
        object.__setattr__(self, "energies", e)
        if self.bound_state is not None:
            if self.bound_state >= 0.0:
                raise ValidationError("a bound state must have negative energy")
            if self.method is not SpectrumMethod.NUMERICAL:
                raise ValidationError("only numerical spectra carry a bound state")

    @property
    def levels(self) -> tuple[tuple[int, float], ...]:
        """(index, energy) pairs, indices starting at 1."""
        return tuple((n + 1, float(e)) for n, e in enumerate(self.energies))

    def state_energies(self) -> np.ndarray:
        """All thermally relevant energies ascending, bound state first."""
        if self.bound_state is None:
            return self.energies
        return np.concatenate(([self.bound_state], self.energies))


def dispersion_residual_pos(kl, f: float, p: float):
    """Oscillatory-branch residual (kL) f sin(kL) - 2 sin(kLp) sin(kL(1-p)).

    Zero exactly at the positive-energy eigenvalues.
    """
    kl = np.asarray(kl, dtype=float)
    out = kl * f * np.sin(kl) - 2.0 * np.sin(p * kl) * np.sin((1.0 - p) * kl)
    return float(out) if out.ndim == 0 else out


def dispersion_residual_neg(kappal, f: float, p: float):
    """Hyperbolic-branch residual (kL) f sinh(kL) - 2 sinh(kLp) sinh(kL(1-p)).

    Zero at the negative-energy eigenvalue when one exists.  May overflow
    for large arguments; the internal solver uses a rescaled form.
    """
    kappal = np.asarray(kappal, dtype=float)
    out = (kappal * f * np.sinh(kappal)
           - 2.0 * np.sinh(p * kappal) * np.sinh((1.0 - p) * kappal))
    return float(out) if out.ndim == 0 else out


def validate_regime(imp: ImpuritySpec) -> CouplingRegime:
    """Classify |f| against the weak/strong expansion thresholds."""
    a = abs(imp.strength_f)
    if a >= WEAK_THRESHOLD:
        return CouplingRegime.WEAK
    if a <= STRONG_THRESHOLD:
        return CouplingRegime.STRONG
    return CouplingRegime.INTERMEDIATE


def isw_levels(well: WellSpec, n_max: int = DEFAULT_N_MAX) -> Spectrum:
    """Bare box spectrum E_n = n^2 pi^2 hbar^2 / (2 m L^2), n = 1..n_max."""
    if n_max < 1:
        raise ValidationError("n_max must be at least 1")
    n = np.arange(1, n_max + 1, dtype=float)
    e = well.energy_scale * (n * math.pi) ** 2
    return Spectrum(well, None, SpectrumMethod.BARE_ISW, e)


def solve_spectrum_numerical(well: WellSpec, imp: ImpuritySpec,
                             n_max: int = DEFAULT_N_MAX,
                             tol: float = DEFAULT_TOL) -> Spectrum:
    """Lowest n_max positive-energy roots plus the bound state if present.

    Each root is isolated in its own analytic bracket and refined by
    bisection to relative tolerance `tol` in kL, then converted to energy.
    An impurity at a wall (p = 0 or 1) reduces to the bare box.
    """
    if n_max < 1:
        raise ValidationError("n_max must be at least 1")
    if not 0.0 < tol <= 1e-6:
        raise ValidationError("tol must lie in (0, 1e-6]")
    if imp.position_p in (0.0, 1.0):
        bare = isw_levels(well, n_max)
        return Spectrum(well, imp, SpectrumMethod.NUMERICAL, bare.energies)
    kl = _kernels.positive_levels(imp.strength_f, imp.position_p, n_max, tol)
    e = well.energy_scale * kl * kl
    eb = bound_state(well, imp, tol)
    return Spectrum(well, imp, SpectrumMethod.NUMERICAL, e, bound_state=eb)


def bound_state(well: WellSpec, imp: ImpuritySpec,
                tol: float = DEFAULT_TOL) -> float | None:
    """Negative-energy level, or None when it does not exist.

    Exists only for an attractive impurity strictly inside the well with
    f < 2 p (1 - p) (hence never for f >= 0.5).  As f -> 0 the energy
    approaches -hbar^2 / (2 m L^2 f^2) independently of p.
    """
    kappal = _kernels.bound_level(imp.strength_f, imp.position_p, tol)
    if math.isnan(kappal):
        return None
    return -well.energy_scale * kappal * kappal


def weak_perturb_levels(well: WellSpec, imp: ImpuritySpec,
                        n_max: int = DEFAULT_N_MAX, order: int = 2) -> Spectrum:
    """1/f expansion of the levels, to first or second order.

    Second order uses the algebraically reduced form
        sin^4(x) + 2 n pi (1 - 2p) sin^3(x) cos(x),   x = n pi p,
    so a node (sin x = 0) yields exactly zero correction instead of a
    0 * cot singularity.
    """
    if n_max < 1:
        raise ValidationError("n_max must be at least 1")
    if order not in (1, 2):
        raise ValidationError("order must be 1 or 2")
    f = imp.strength_f
    p = imp.position_p
    n = np.arange(1, n_max + 1, dtype=float)
    x = n * math.pi * p
    sin_x = np.sin(x)
    vals = (n * math.pi) ** 2 - 4.0 * sin_x**2 / f
    if order == 2:
        vals = vals - (4.0 / ((n * math.pi * f) ** 2)) * (
            sin_x**4 + 2.0 * n * math.pi * (1.0 - 2.0 * p) * sin_x**3 * np.cos(x)
        )
    vals = np.sort(vals)
    method = SpectrumMethod.WEAK_PERTURB2 if order == 2 else SpectrumMethod.WEAK_PERTURB1
    return Spectrum(well, imp, method, well.energy_scale * vals)


def _strong_family_values(f: float, p: float, n: np.ndarray) -> np.ndarray:
    return (n * math.pi / p) ** 2 + n * f * math.pi / p**3


def strong_perturb_family(well: WellSpec, imp: ImpuritySpec,
                          n_max: int = DEFAULT_N_MAX) -> Spectrum:
    """Single sub-well branch of the strong-coupling expansion.

    Levels n = 1..n_max of the branch anchored at the impurity position p:
    E_n = hbar^2/(2 m L^2) (n^2 pi^2 / p^2 + n f pi / p^3).  The level
    index follows one family, which is what cycle evaluation needs so that
    occupation n maps to the same state before and after a stroke.
    """
    if n_max < 1:
        raise ValidationError("n_max must be at least 1")
    p = imp.position_p
    if p in (0.0, 1.0):
        raise ValidationError("strong-coupling expansion requires 0 < p < 1")
    n = np.arange(1, n_max + 1, dtype=float)
    vals = np.sort(_strong_family_values(imp.strength_f, p, n))
    return Spectrum(well, imp, SpectrumMethod.STRONG_PERTURB1,
                    well.energy_scale * vals)


def strong_perturb_levels(well: WellSpec, imp: ImpuritySpec,
                          n_max: int = DEFAULT_N_MAX) -> Spectrum:
    """Strong-coupling spectrum: both sub-well branches merged and sorted.

    Generates the branch at p and its mirror at 1 - p, merges them and
    keeps the lowest n_max levels.  At p = 1/2 the branches coincide and
    every level appears twice (exact degeneracy is allowed there).
    """
    if n_max < 1:
        raise ValidationError("n_max must be at least 1")
    p = imp.position_p
    if p in (0.0, 1.0):
        raise ValidationError("strong-coupling expansion requires 0 < p < 1")
    f = imp.strength_f
    n = np.arange(1, n_max + 1, dtype=float)
    merged = np.sort(np.concatenate([
        _strong_family_values(f, p, n),
        _strong_family_values(f, 1.0 - p, n),
    ]))[:n_max]
    return Spectrum(well, imp, SpectrumMethod.STRONG_PERTURB1,
                    well.energy_scale * merged)


def build_spectrum(well: WellSpec, imp: ImpuritySpec | None,
                   method: SpectrumMethod, n_max: int = DEFAULT_N_MAX,
                   tol: float = DEFAULT_TOL) -> Spectrum:
    """Dispatch to the spectrum route named by `method`.

    With imp=None every method returns the bare box.  STRONG_PERTURB1
    resolves to the single-family branch (see strong_perturb_family).
    """
    if imp is None or method is SpectrumMethod.BARE_ISW:
        return isw_levels(well, n_max)
    if method is SpectrumMethod.NUMERICAL:
        return solve_spectrum_numerical(well, imp, n_max, tol)
    if method is SpectrumMethod.WEAK_PERTURB1:
        return weak_perturb_levels(well, imp, n_max, order=1)
    if method is SpectrumMethod.WEAK_PERTURB2:
        return weak_perturb_levels(well, imp, n_max, order=2)
    if method is SpectrumMethod.STRONG_PERTURB1:
        return strong_perturb_family(well, imp, n_max)
    raise ValidationError(f"unknown spectrum method: {method!r}")
