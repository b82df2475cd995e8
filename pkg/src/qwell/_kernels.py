"""Backend selection: compiled extension when available, NumPy otherwise.

Set QWELL_PURE_PYTHON=1 to force the pure backend regardless of whether the
extension was built.
"""

import os

_force_pure = os.environ.get("QWELL_PURE_PYTHON", "") not in ("", "0")

if _force_pure:
    from . import _pure as _impl

    BACKEND = "pure"
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _pure as _impl

        BACKEND = "pure"

positive_levels = _impl.positive_levels
bound_level = _impl.bound_level
boltzmann_weights = _impl.boltzmann_weights


def backend_name() -> str:
    """Name of the active kernel backend ('compiled' or 'pure')."""
    return BACKEND
