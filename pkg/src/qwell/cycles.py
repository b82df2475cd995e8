"""Quantum Otto and Carnot cycle evaluation and phase classification.

One parameter (impurity strength, well length, or impurity position)
changes during the cycle; the other two stay fixed.  Sign conventions:
positive heat is absorbed by the working substance, positive work is
delivered by it, and W = Q_in + Q_out.

The Otto cycle needs only the two stroke spectra and the two thermal
occupations: Q_in = sum E_n_in (P_n(hot) - P_n(cold)) and Q_out the same
sum over the outgoing spectrum with the sign reversed.  The Carnot cycle
needs only the two endpoint entropies: W = (T_hot - T_cold) (S_hot_end -
S_cold_end), which makes its engine efficiency exactly 1 - T_cold/T_hot.
A Carnot cycle is meaningful only when the length is the varied parameter
and the lengths match the temperatures via L_hot^2/L_cold^2 =
T_cold/T_hot; the relative mismatch is always reported and enforcement is
optional (several published parameter sets violate it).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import CycleError, TruncationError, ValidationError
from .physconst import CODATA2018
from .spectrum import (DEFAULT_N_MAX, DEFAULT_TOL, ImpuritySpec, Spectrum,
                       SpectrumMethod, WellSpec, build_spectrum)
from .thermo import AUTO_N_MAX_LIMIT, DEFAULT_TAIL_TOL, thermal_state

CLASSIFY_EPS_REL = 1e-9
CLASSIFY_EPS_ABS = 1e-30  # joules
REVERSIBILITY_TOL = 1e-6


class CycleKind(enum.Enum):
    OTTO = "otto"
    CARNOT = "carnot"


class Phase(enum.Enum):
    HEAT_ENGINE = "heat_engine"
    REFRIGERATOR = "refrigerator"
    JOULE_PUMP = "joule_pump"
    COLD_PUMP = "cold_pump"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class StrengthVariation:
    """Impurity strength f_hot during the hot stroke, f_cold during the cold."""

    f_hot: float
    f_cold: float


@dataclass(frozen=True)
class LengthVariation:
    """Well length (m) on the hot and cold sides of the cycle."""

    length_hot: float
    length_cold: float


@dataclass(frozen=True)
class PositionVariation:
    """Impurity position during the hot and cold strokes."""

    position_hot: float
    position_cold: float


VariedParam = Union[StrengthVariation, LengthVariation, PositionVariation]


@dataclass(frozen=True)
class CycleSpec:
    """Full description of one cycle evaluation.

    Exactly one parameter varies during the cycle (`varied`); the fixed
    values of the other two are given by fixed_f / fixed_p / fixed_length
    as applicable.  fixed_f=None means no impurity at all (bare box), in
    which case fixed_p is ignored.
    """

    cycle: CycleKind
    varied: VariedParam
    t_hot: float
    t_cold: float
    fixed_f: float | None = None
    fixed_p: float | None = None
    fixed_length: float | None = None
    method: SpectrumMethod = SpectrumMethod.WEAK_PERTURB2
    mass: float = CODATA2018.electron_mass

    def __post_init__(self) -> None:
        if not self.t_hot > self.t_cold > 0.0:
            raise ValidationError("temperatures must satisfy t_hot > t_cold > 0")
        if self.cycle is CycleKind.CARNOT and not isinstance(self.varied, LengthVariation):
            raise ValidationError(
                "a Carnot cycle exists only when the well length is the "
                "varied parameter (reversibility cannot hold otherwise)"
            )
        v = self.varied
        if isinstance(v, StrengthVariation):
            if self.fixed_p is None or self.fixed_length is None:
                raise ValidationError("strength-varied cycles need fixed_p and fixed_length")
        elif isinstance(v, LengthVariation):
            if v.length_hot <= 0.0 or v.length_cold <= 0.0:
                raise ValidationError("well lengths must be positive")
            if self.fixed_f is not None and self.fixed_p is None:
                raise ValidationError("an impurity needs a position: set fixed_p")
        elif isinstance(v, PositionVariation):
            if self.fixed_f is None or self.fixed_length is None:
                raise ValidationError("position-varied cycles need fixed_f and fixed_length")
        else:
            raise ValidationError(f"unknown varied parameter: {v!r}")


@dataclass(frozen=True)
class CycleResult:
    """Heats, work (joules), operational phase and its figure of merit."""

    q_in: float
    q_out: float
    work: float
    phase: Phase
    merit: float | None
    reversibility_residual: float | None = None


def classify(q_in: float, q_out: float, work: float,
             eps_rel: float = CLASSIFY_EPS_REL) -> Phase:
    """Operational phase from the signs of (Q_in, Q_out, W).

    Magnitudes below eps_rel * max(|Q_in|, |Q_out|, floor) count as zero
    and yield DEGENERATE, as does any sign pattern outside the four
    recognised ones.
    """
    if eps_rel <= 0.0:
        raise ValidationError("eps_rel must be positive")
    threshold = eps_rel * max(abs(q_in), abs(q_out), CLASSIFY_EPS_ABS)
    if min(abs(q_in), abs(q_out), abs(work)) < threshold:
        return Phase.DEGENERATE
    if q_in > 0.0 and q_out < 0.0 and work > 0.0:
        return Phase.HEAT_ENGINE
    if q_in < 0.0 and q_out > 0.0 and work < 0.0:
        return Phase.REFRIGERATOR
    if q_in < 0.0 and q_out < 0.0 and work < 0.0:
        return Phase.JOULE_PUMP
    if q_in > 0.0 and q_out < 0.0 and work < 0.0:
        return Phase.COLD_PUMP
    return Phase.DEGENERATE


def figure_of_merit(phase: Phase, q_in: float, q_out: float,
                    work: float) -> float | None:
    """Phase-appropriate merit: efficiency for an engine, COP otherwise."""
    if phase is Phase.HEAT_ENGINE:
        return work / q_in
    if phase is Phase.REFRIGERATOR:
        return q_out / abs(work)
    if phase is Phase.COLD_PUMP:
        return abs(q_out) / abs(work)
    if phase is Phase.JOULE_PUMP:
        return (abs(q_out) + abs(q_in)) / abs(work)
    return None


def _side_spectrum(spec: CycleSpec, hot: bool, n_max: int, tol: float) -> Spectrum:
    v = spec.varied
    if isinstance(v, StrengthVariation):
        f = v.f_hot if hot else v.f_cold
        p = spec.fixed_p
        length = spec.fixed_length
    elif isinstance(v, LengthVariation):
        f = spec.fixed_f
        p = spec.fixed_p
        length = v.length_hot if hot else v.length_cold
    else:
        f = spec.fixed_f
        p = v.position_hot if hot else v.position_cold
        length = spec.fixed_length
    well = WellSpec(length, spec.mass)
    imp = None if f is None else ImpuritySpec(f, p)
    return build_spectrum(well, imp, spec.method, n_max, tol)


def _thermal_pair(spec: CycleSpec, n_max: int, tail_tol: float, tol: float):
    """Thermal states on both sides, growing n_max together on truncation."""
    n = n_max
    while True:
        sp_hot = _side_spectrum(spec, True, n, tol)
        sp_cold = _side_spectrum(spec, False, n, tol)
        if (sp_hot.bound_state is None) != (sp_cold.bound_state is None):
            raise CycleError(
                "bound state exists on one side of the cycle only; level "
                "occupations cannot be mapped one-to-one between the strokes"
            )
        try:
            state_hot = thermal_state(sp_hot, spec.t_hot, tail_tol)
            state_cold = thermal_state(sp_cold, spec.t_cold, tail_tol)
            return state_hot, state_cold
        except TruncationError as err:
            nxt = min(AUTO_N_MAX_LIMIT, max(2 * n, err.suggested_n_max))
            if nxt <= n:
                raise
            n = nxt


def otto_run(spec: CycleSpec, n_max: int = DEFAULT_N_MAX,
             tail_tol: float = DEFAULT_TAIL_TOL,
             tol: float = DEFAULT_TOL) -> CycleResult:
    """Evaluate one Otto cycle by explicit level sums.

    P(hot) is the thermal occupation of the incoming spectrum at t_hot,
    P(cold) that of the outgoing spectrum at t_cold; the adiabats keep
    occupations fixed, so heats follow from the occupation differences.
    """
    if spec.cycle is not CycleKind.OTTO:
        raise ValidationError("otto_run needs a CycleSpec with cycle=OTTO")
    state_hot, state_cold = _thermal_pair(spec, n_max, tail_tol, tol)
    q_in, q_out, work = _otto_heats(state_hot.energies, state_cold.energies,
                                    state_hot.probabilities,
                                    state_cold.probabilities)
    phase = classify(q_in, q_out, work)
    return CycleResult(q_in, q_out, work, phase,
                       figure_of_merit(phase, q_in, q_out, work))


def _otto_heats(e_in: np.ndarray, e_out: np.ndarray,
                p_hot: np.ndarray, p_cold: np.ndarray):
    if len(e_in) != len(e_out):
        raise CycleError("stroke spectra have mismatched level counts")
    dp = p_hot - p_cold
    q_in = float(np.dot(e_in, dp))
    q_out = float(-np.dot(e_out, dp))
    work = float(np.dot(e_in - e_out, dp))
    return q_in, q_out, work


def reversibility_residual(length_hot: float, length_cold: float,
                           t_hot: float, t_cold: float) -> float:
    """Relative mismatch of L_hot^2/L_cold^2 against T_cold/T_hot."""
    return abs((length_hot / length_cold) ** 2 * (t_hot / t_cold) - 1.0)


def reversible_cold_length(length_hot: float, t_hot: float, t_cold: float) -> float:
    """Cold-side length that satisfies the Carnot reversibility condition."""
    return length_hot * math.sqrt(t_hot / t_cold)


def carnot_run(spec: CycleSpec, n_max: int = DEFAULT_N_MAX,
               tail_tol: float = DEFAULT_TAIL_TOL,
               tol: float = DEFAULT_TOL,
               enforce_reversibility: bool = False) -> CycleResult:
    """Evaluate one Carnot cycle from its two entropy endpoints.

    W = (t_hot - t_cold) (S_hot - S_cold) with S_hot the entropy at
    (length_hot, t_hot) and S_cold at (length_cold, t_cold).  The
    reversibility mismatch is reported in the result; with
    enforce_reversibility=True a mismatch beyond 1e-6 relative raises
    instead, naming the required cold length.
    """
    if spec.cycle is not CycleKind.CARNOT:
        raise ValidationError("carnot_run needs a CycleSpec with cycle=CARNOT")
    v = spec.varied
    residual = reversibility_residual(v.length_hot, v.length_cold,
                                      spec.t_hot, spec.t_cold)
    if enforce_reversibility and residual > REVERSIBILITY_TOL:
        need = reversible_cold_length(v.length_hot, spec.t_hot, spec.t_cold)
        raise ValidationError(
            f"reversibility violated (relative residual {residual:.3e}); "
            f"with length_hot={v.length_hot:g} m the cold length must be "
            f"{need:.6g} m"
        )
    state_hot, state_cold = _thermal_pair(spec, n_max, tail_tol, tol)
    ds = state_hot.entropy_s - state_cold.entropy_s
    q_in = spec.t_hot * ds
    q_out = -spec.t_cold * ds
    work = (spec.t_hot - spec.t_cold) * ds
    phase = classify(q_in, q_out, work)
    if phase is Phase.HEAT_ENGINE:
        merit = 1.0 - spec.t_cold / spec.t_hot
    else:
        merit = figure_of_merit(phase, q_in, q_out, work)
    return CycleResult(q_in, q_out, work, phase, merit,
                       reversibility_residual=residual)


def otto_no_impurity_closed(gamma_hot: float, gamma_cold: float,
                            beta_hot: float, beta_cold: float):
    """Continuum-limit Otto work and efficiency for the bare box.

    W = (gamma_hot - gamma_cold) (1/(beta_hot gamma_hot) -
    1/(beta_cold gamma_cold)) / 2 and eta = 1 - gamma_cold/gamma_hot.
    """
    for v in (gamma_hot, gamma_cold, beta_hot, beta_cold):
        if v <= 0.0:
            raise ValidationError("gamma and beta arguments must be positive")
    work = 0.5 * (gamma_hot - gamma_cold) * (
        1.0 / (beta_hot * gamma_hot) - 1.0 / (beta_cold * gamma_cold)
    )
    eta = 1.0 - gamma_cold / gamma_hot
    return work, eta


def carnot_no_impurity_closed(gamma_hot: float, gamma_cold: float,
                              beta_hot: float, beta_cold: float,
                              t_hot: float, t_cold: float) -> float:
    """Continuum-limit Carnot work for the bare box.

    W = k_B (t_hot - t_cold) ln sqrt(beta_cold gamma_cold /
    (beta_hot gamma_hot)).  Note the expression vanishes exactly when the
    reversibility condition holds; it is nonzero only to the extent the
    parameter set violates it.
    """
    for v in (gamma_hot, gamma_cold, beta_hot, beta_cold, t_hot, t_cold):
        if v <= 0.0:
            raise ValidationError("all arguments must be positive")
    kb = CODATA2018.boltzmann
    ratio = (beta_cold * gamma_cold) / (beta_hot * gamma_hot)
    return kb * (t_hot - t_cold) * math.log(math.sqrt(ratio))


def _g_factor(p: float, f: float, beta_i: float, gamma_scale: float) -> float:
    return (2.0 * p * p - f * math.sqrt(beta_i * gamma_scale / math.pi)) / (
        4.0 * beta_i * gamma_scale)


@dataclass(frozen=True)
class OttoStrongClosed:
    q_in: float
    q_out: float
    work: float
    eta: float | None
    cop: float | None


def otto_strong_closed(f: float, p_hot: float, p_cold: float,
                       gamma_scale: float, beta_hot: float,
                       beta_cold: float) -> OttoStrongClosed:
    """First-order strong-coupling closed forms for a position-varied Otto cycle.

    Continuum-limit heats over the single sub-well branch; eta is returned
    as work/q_in (the algebraic x,y shortcut for it reduces to
    1 + (p_hot/p_cold)^2 at f = 0, which contradicts the heats it was
    derived from, so the ratio of the closed-form work and heat is used).
    The COP follows the x,y form, whose f = 0 limit does agree.
    """
    if not (0.0 < p_hot < 1.0 and 0.0 < p_cold < 1.0):
        raise ValidationError("positions must lie strictly inside the well")
    g_h = _g_factor(p_hot, f, beta_hot, gamma_scale)
    g_c = _g_factor(p_cold, f, beta_cold, gamma_scale)
    pref = 2.0 * f * gamma_scale ** 1.5 / math.pi ** 1.5
    grad = g_h * math.sqrt(beta_hot) / p_hot - g_c * math.sqrt(beta_cold) / p_cold
    q_in = pref / p_hot**3 * grad + 0.5 * (
        1.0 / beta_hot - p_cold**2 / (beta_cold * p_hot**2))
    q_out = -pref / p_cold**3 * grad + 0.5 * (
        1.0 / beta_cold - p_hot**2 / (beta_hot * p_cold**2))
    work = pref * grad * (1.0 / p_hot**3 - 1.0 / p_cold**3) + (
        (p_hot**2 - p_cold**2) / 2.0) * (
        1.0 / (beta_cold * p_hot**2) - 1.0 / (beta_hot * p_cold**2))
    eta = work / q_in if q_in != 0.0 else None
    x = pref * grad
    y = (beta_hot * p_cold**2 - beta_cold * p_hot**2) / (2.0 * beta_hot * beta_cold)
    denom = 2.0 * x * (p_cold**3 - p_hot**3) + y * p_hot * p_cold * (p_hot**2 - p_cold**2)
    cop = p_hot**3 * (y * p_cold - 2.0 * x) / denom if denom != 0.0 else None
    return OttoStrongClosed(q_in, q_out, work, eta, cop)


@dataclass(frozen=True)
class CarnotStrongClosed:
    s_hot: float
    s_cold: float
    work: float
    eta: float
    cop: float


def carnot_strong_closed(f: float, p: float, gamma_hot: float,
                         gamma_cold: float, beta_hot: float, beta_cold: float,
                         t_hot: float, t_cold: float) -> CarnotStrongClosed:
    """First-order strong-coupling closed forms for a length-varied Carnot cycle.

    Endpoint entropies over the single sub-well branch in the continuum
    limit; W = (t_hot - t_cold)(S_hot - S_cold), eta = 1 - t_cold/t_hot,
    COP = t_cold / |t_hot - t_cold|.
    """
    if not 0.0 < p < 1.0:
        raise ValidationError("position must lie strictly inside the well")
    kb = CODATA2018.boltzmann

    def entropy(beta_i: float, gamma_i: float) -> float:
        g = _g_factor(p, f, beta_i, gamma_i)
        lead = 2.0 * beta_i * kb * math.sqrt(gamma_i * beta_i) / math.sqrt(p * p * math.pi)
        inner = 1.0 / (2.0 * beta_i) + (
            2.0 * math.sqrt(beta_i) * gamma_i ** 1.5 / math.pi ** 1.5 * f * g / p**4)
        return lead * inner + kb * math.log(
            0.5 * math.sqrt(p * p * math.pi / (beta_i * gamma_i)))

    s_hot = entropy(beta_hot, gamma_hot)
    s_cold = entropy(beta_cold, gamma_cold)
    work = (t_hot - t_cold) * (s_hot - s_cold)
    cop = t_cold / abs(t_hot - t_cold) if t_hot != t_cold else math.inf
    return CarnotStrongClosed(s_hot, s_cold, work,
                              eta=1.0 - t_cold / t_hot, cop=cop)
