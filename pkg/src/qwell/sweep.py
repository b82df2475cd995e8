"""Cycle evaluation over a 2-D parameter grid, with extrema summaries.

Cells are independent cycle evaluations; the grid is laid out row-major
(rows follow the y axis, x ascending within a row) and the layout is
deterministic for any worker count.  Individual cell failures become
error cells instead of aborting the grid, but a grid with more than 1 %
error cells fails as a whole.
"""

from __future__ import annotations

import dataclasses
import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .cycles import (CycleKind, CycleResult, CycleSpec, LengthVariation,
                     Phase, PositionVariation, StrengthVariation, carnot_run,
                     otto_run)
from .errors import QwellError, SweepError, ValidationError
from .spectrum import DEFAULT_N_MAX, DEFAULT_TOL
from .thermo import DEFAULT_TAIL_TOL

WORKERS_ENV = "QWELL_WORKERS"
MAX_ERROR_FRACTION = 0.01


class AxisParam(enum.Enum):
    IMPURITY_POSITION = "p"
    WELL_LENGTH = "length"          # metres
    HOT_TEMPERATURE = "t_hot"       # kelvin
    IMPURITY_STRENGTH = "f"
    STRENGTH_PAIR_MAGNITUDE = "f_pair"  # varied strengths set to (+v, -v)


@dataclass(frozen=True)
class SweepAxis:
    """Inclusive linear grid lo..hi with `steps` points."""

    param: AxisParam
    lo: float
    hi: float
    steps: int

    def __post_init__(self) -> None:
        if self.steps < 2:
            raise ValidationError("an axis needs at least 2 steps")
        if not self.lo < self.hi:
            raise ValidationError("axis bounds must satisfy lo < hi")

    @property
    def values(self) -> np.ndarray:
        return self.lo + (self.hi - self.lo) * np.arange(self.steps) / (self.steps - 1)


@dataclass(frozen=True)
class CellError:
    """A cell whose evaluation raised; carries the message only."""

    message: str


@dataclass(frozen=True)
class SweepGrid:
    template: CycleSpec
    axis_x: SweepAxis
    axis_y: SweepAxis
    cells: tuple  # CycleResult | CellError, row-major, len = sx * sy

    def cell(self, ix: int, iy: int):
        return self.cells[iy * self.axis_x.steps + ix]


@dataclass(frozen=True)
class SweepSummary:
    """Per-phase extrema in joules; None where the phase is absent."""

    w_max: float | None
    eta_max: float | None
    w_at_eta_max: float | None
    abs_w_max: float | None
    cop_max: float | None
    abs_w_at_cop_max: float | None
    phase_census: dict


def _substitute(template: CycleSpec, param: AxisParam, value: float) -> CycleSpec:
    if param is AxisParam.IMPURITY_POSITION:
        return dataclasses.replace(template, fixed_p=float(value))
    if param is AxisParam.WELL_LENGTH:
        return dataclasses.replace(template, fixed_length=float(value))
    if param is AxisParam.HOT_TEMPERATURE:
        return dataclasses.replace(template, t_hot=float(value))
    if param is AxisParam.IMPURITY_STRENGTH:
        return dataclasses.replace(template, fixed_f=float(value))
    if param is AxisParam.STRENGTH_PAIR_MAGNITUDE:
        return dataclasses.replace(
            template, varied=StrengthVariation(float(value), -float(value)))
    raise ValidationError(f"unknown axis parameter {param!r}")


def _validate_axes(template: CycleSpec, ax: SweepAxis, ay: SweepAxis) -> None:
    if ax.param is ay.param:
        raise ValidationError("the two sweep axes must differ")
    varied = template.varied
    for axis in (ax, ay):
        p = axis.param
        if p is AxisParam.IMPURITY_POSITION and isinstance(varied, PositionVariation):
            raise ValidationError("position is varied during the cycle; it cannot be a sweep axis")
        if p is AxisParam.WELL_LENGTH and isinstance(varied, LengthVariation):
            raise ValidationError("length is varied during the cycle; it cannot be a sweep axis")
        if p is AxisParam.IMPURITY_STRENGTH and isinstance(varied, StrengthVariation):
            raise ValidationError("strength is varied during the cycle; it cannot be a sweep axis")
        if p is AxisParam.STRENGTH_PAIR_MAGNITUDE and not isinstance(varied, StrengthVariation):
            raise ValidationError("a strength-pair axis needs a strength-varied cycle")
        if p is AxisParam.HOT_TEMPERATURE and axis.lo <= template.t_cold:
            raise ValidationError("hot-temperature axis must stay above t_cold")


def _evaluate_cell(payload) -> CycleResult | CellError:
    spec, n_max, tail_tol, tol = payload
    try:
        if spec.cycle is CycleKind.OTTO:
            return otto_run(spec, n_max, tail_tol, tol)
        return carnot_run(spec, n_max, tail_tol, tol)
    except (QwellError, ValueError, ArithmeticError) as exc:
        return CellError(f"{type(exc).__name__}: {exc}")


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_sweep(template: CycleSpec, axis_x: SweepAxis, axis_y: SweepAxis,
              n_max: int = DEFAULT_N_MAX, tail_tol: float = DEFAULT_TAIL_TOL,
              tol: float = DEFAULT_TOL, workers: int | None = None) -> SweepGrid:
    """Evaluate the template cycle at every grid point.

    Axis values are substituted into the template cell by cell; cells are
    independent, and results are written to pre-assigned slots so the
    output is identical for any worker count.
    """
    _validate_axes(template, axis_x, axis_y)
    payloads = []
    for y in axis_y.values:
        row_spec = _substitute(template, axis_y.param, y)
        for x in axis_x.values:
            try:
                cell_spec = _substitute(row_spec, axis_x.param, x)
                payloads.append((cell_spec, n_max, tail_tol, tol))
            except QwellError as exc:
                payloads.append(CellError(f"{type(exc).__name__}: {exc}"))
    if workers is None:
        workers = default_workers()
    if workers > 1:
        real = [p for p in payloads if not isinstance(p, CellError)]
        chunk = max(1, len(real) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            computed = iter(list(pool.map(_evaluate_cell, real, chunksize=chunk)))
        cells = tuple(p if isinstance(p, CellError) else next(computed)
                      for p in payloads)
    else:
        cells = tuple(p if isinstance(p, CellError) else _evaluate_cell(p)
                      for p in payloads)
    n_err = sum(isinstance(c, CellError) for c in cells)
    if n_err > MAX_ERROR_FRACTION * len(cells):
        causes = sorted({c.message for c in cells if isinstance(c, CellError)})
        raise SweepError(
            f"{n_err}/{len(cells)} cells failed; causes: " + "; ".join(causes[:5]))
    return SweepGrid(template, axis_x, axis_y, cells)


def summarize(grid: SweepGrid) -> SweepSummary:
    """Extrema per phase: engine work/efficiency, pump |work|/COP.

    Ties resolve to the lowest row-major cell index; phases absent from
    the grid leave their fields as None.
    """
    w_max = eta_max = w_at_eta_max = None
    abs_w_max = cop_max = abs_w_at_cop_max = None
    census: dict = {}
    for cell in grid.cells:
        if isinstance(cell, CellError):
            census["error"] = census.get("error", 0) + 1
            continue
        census[cell.phase] = census.get(cell.phase, 0) + 1
        if cell.phase is Phase.HEAT_ENGINE:
            if w_max is None or cell.work > w_max:
                w_max = cell.work
            if eta_max is None or cell.merit > eta_max:
                eta_max = cell.merit
                w_at_eta_max = cell.work
        elif cell.phase in (Phase.REFRIGERATOR, Phase.COLD_PUMP, Phase.JOULE_PUMP):
            aw = abs(cell.work)
            if abs_w_max is None or aw > abs_w_max:
                abs_w_max = aw
            if cop_max is None or cell.merit > cop_max:
                cop_max = cell.merit
                abs_w_at_cop_max = aw
    return SweepSummary(w_max, eta_max, w_at_eta_max,
                        abs_w_max, cop_max, abs_w_at_cop_max, census)


def phase_regions(grid: SweepGrid, axis: str = "x", index: int = 0):
    """Contiguous same-phase runs along one grid line.

    axis="x" walks row `index` (fixed y), axis="y" walks column `index`.
    Returns [(phase, (value_lo, value_hi)), ...] in axis order; error
    cells break runs and are skipped.
    """
    if axis not in ("x", "y"):
        raise ValidationError("axis must be 'x' or 'y'")
    if axis == "x":
        values = grid.axis_x.values
        line = [grid.cell(i, index) for i in range(grid.axis_x.steps)]
    else:
        values = grid.axis_y.values
        line = [grid.cell(index, i) for i in range(grid.axis_y.steps)]
    runs = []
    current = None
    start = None
    last = None
    for v, cell in zip(values, line):
        phase = None if isinstance(cell, CellError) else cell.phase
        if phase != current:
            if current is not None:
                runs.append((current, (float(start), float(last))))
            current = phase
            start = v
        last = v
    if current is not None:
        runs.append((current, (float(start), float(last))))
    return [(ph, iv) for ph, iv in runs if ph is not None]
