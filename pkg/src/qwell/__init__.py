"""qwell: spectra and quantum thermodynamic cycles for a 1-D box with a delta impurity."""

from ._kernels import backend_name
from .cycles import (CarnotStrongClosed, CycleKind, CycleResult, CycleSpec,
                     LengthVariation, OttoStrongClosed, Phase,
                     PositionVariation, StrengthVariation,
                     carnot_no_impurity_closed, carnot_run,
                     carnot_strong_closed, classify, figure_of_merit,
                     otto_no_impurity_closed, otto_run, otto_strong_closed,
                     reversibility_residual, reversible_cold_length)
from .errors import (BracketError, ConfigError, CycleError, QwellError,
                     SweepError, TruncationError, ValidationError)
from .physconst import CODATA2018, Constants, beta, from_ev, gamma, to_ev
from .spectrum import (CouplingRegime, ImpuritySpec, Spectrum, SpectrumMethod,
                       WellSpec, bound_state, build_spectrum,
                       dispersion_residual_neg, dispersion_residual_pos,
                       isw_levels, solve_spectrum_numerical,
                       strong_perturb_family, strong_perturb_levels,
                       validate_regime, weak_perturb_levels)
from .sweep import (AxisParam, CellError, SweepAxis, SweepGrid, SweepSummary,
                    phase_regions, run_sweep, summarize)
from .thermo import (ThermalState, entropy_continuum_isw, thermal_state,
                     thermal_state_auto)

__version__ = "0.1.0"

__all__ = [
    "AxisParam", "BracketError", "CODATA2018", "CarnotStrongClosed",
    "CellError", "ConfigError", "Constants", "CouplingRegime", "CycleError",
    "CycleKind", "CycleResult", "CycleSpec", "ImpuritySpec",
    "LengthVariation", "OttoStrongClosed", "Phase", "PositionVariation",
    "QwellError", "Spectrum", "SpectrumMethod", "StrengthVariation",
    "SweepAxis", "SweepError", "SweepGrid", "SweepSummary", "ThermalState",
    "TruncationError", "ValidationError", "WellSpec", "backend_name", "beta",
    "bound_state", "build_spectrum", "carnot_no_impurity_closed",
    "carnot_run", "carnot_strong_closed", "classify",
    "dispersion_residual_neg", "dispersion_residual_pos",
    "entropy_continuum_isw", "figure_of_merit", "from_ev", "gamma",
    "isw_levels", "otto_no_impurity_closed", "otto_run",
    "otto_strong_closed", "phase_regions", "reversibility_residual",
    "reversible_cold_length", "run_sweep", "solve_spectrum_numerical",
    "strong_perturb_family", "strong_perturb_levels", "summarize",
    "thermal_state", "thermal_state_auto", "to_ev", "validate_regime",
    "weak_perturb_levels",
]
