"""Exception hierarchy shared across the package."""


class QwellError(Exception):
    """Base class for all qwell errors."""


class ConfigError(QwellError):
    """Bad user input: unknown keys, malformed values, invalid combinations."""


class ValidationError(QwellError):
    """A physically or structurally invalid specification."""


class BracketError(QwellError):
    """Root isolation failed for one level of the dispersion relation."""

    def __init__(self, level: int, f: float, p: float, lo: float, hi: float):
        self.level = level
        self.f = f
        self.p = p
        self.bracket = (lo, hi)
        super().__init__(
            f"level {level}: no root isolated in kL bracket [{lo:.9g}, {hi:.9g}] "
            f"for f={f:g}, p={p:g} after 16x scan refinement"
        )


class TruncationError(QwellError):
    """Spectrum too short for the requested temperature / tail tolerance."""

    def __init__(self, message: str, suggested_n_max: int):
        self.suggested_n_max = suggested_n_max
        super().__init__(message)


class CycleError(QwellError):
    """Inconsistent cycle evaluation (e.g. mismatched level counts)."""


class SweepError(QwellError):
    """A sweep failed as a whole (invalid axes or too many error cells)."""
