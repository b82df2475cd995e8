"""Built-in reference sweeps: presets for tables II through VI.

Each preset fixes the cycle template, the two sweep axes and the grid
resolution, runs the sweep(s), and compares the extrema against stored
reference values with a per-row tolerance.  Reference works are quoted in
the unit of the original table (meV or ueV); computed values are stored
in both eV and the display unit.

Row status is "pass"/"fail" for gated rows and "info" for quantities that
depend on grid resolution or zero-threshold choices too strongly to gate
(COP extrema of near-degenerate cells, and reference values that are not
reproducible from the implemented formulas; see the repository notes).
"""

from __future__ import annotations

from dataclasses import dataclass

from .cycles import (CycleKind, CycleSpec, LengthVariation, PositionVariation,
                     StrengthVariation, carnot_no_impurity_closed,
                     otto_no_impurity_closed)
from .errors import ConfigError
from .physconst import beta, gamma, to_ev
from .spectrum import SpectrumMethod
from .sweep import AxisParam, SweepAxis, run_sweep, summarize

NM = 1e-9
T_COLD = 1.5  # kelvin, common to every preset

TABLE_IDS = ("II", "III", "IV", "V", "VI")


@dataclass(frozen=True)
class TableRow:
    table: str
    label: str
    unit: str            # unit of `reference` and `computed_display`
    reference: float
    computed: float | None       # same unit as reference
    computed_ev: float | None    # energies only; None for ratios
    rel_dev: float | None
    status: str          # "pass" | "fail" | "info"
    note: str = ""


def _row(table: str, label: str, unit: str, reference: float,
         computed: float | None, computed_ev: float | None,
         mode: str, tol=None, note: str = "") -> TableRow:
    rel = None
    status = "info"
    if computed is not None and reference != 0.0:
        rel = computed / reference - 1.0
    if mode == "rel" and computed is not None:
        status = "pass" if abs(rel) <= tol else "fail"
    elif mode == "band" and computed is not None:
        lo, hi = tol
        status = "pass" if lo <= computed <= hi else "fail"
    elif mode == "info":
        status = "info"
    elif computed is None:
        status = "fail"
        note = note or "phase absent from grid"
    return TableRow(table, label, unit, reference, computed, computed_ev,
                    rel, status, note)


def _uev(energy_j: float | None) -> float | None:
    return None if energy_j is None else to_ev(energy_j) * 1e6


def _mev(energy_j: float | None) -> float | None:
    return None if energy_j is None else to_ev(energy_j) * 1e3


def _ev(energy_j: float | None) -> float | None:
    return None if energy_j is None else to_ev(energy_j)


def _table_iii(steps: int, n_max: int, workers) -> list[TableRow]:
    ax_f = SweepAxis(AxisParam.IMPURITY_STRENGTH, 1.0, 10.0, steps)
    ax_p = SweepAxis(AxisParam.IMPURITY_POSITION, 0.0, 1.0, steps)
    otto = CycleSpec(CycleKind.OTTO, LengthVariation(100 * NM, 163 * NM),
                     5.0, T_COLD, fixed_f=5.0, fixed_p=0.5)
    so = summarize(run_sweep(otto, ax_f, ax_p, n_max=n_max, workers=workers))
    carnot = CycleSpec(CycleKind.CARNOT, LengthVariation(100 * NM, 163 * NM),
                       5.0, T_COLD, fixed_f=5.0, fixed_p=0.5)
    sc = summarize(run_sweep(carnot, ax_f, ax_p, n_max=n_max, workers=workers))
    gh, gc = gamma(100 * NM), gamma(163 * NM)
    bh, bc = beta(5.0), beta(T_COLD)
    w_closed, eta_closed = otto_no_impurity_closed(gh, gc, bh, bc)
    wc_closed = carnot_no_impurity_closed(gh, gc, bh, bc, 5.0, T_COLD)
    return [
        _row("III", "otto engine W_max", "ueV", 29.2, _uev(so.w_max), _ev(so.w_max), "rel", 0.05),
        _row("III", "otto engine eta_max", "1", 0.624, so.eta_max, None, "rel", 0.01),
        _row("III", "carnot engine W_max", "ueV", 37.4, _uev(sc.w_max), _ev(sc.w_max), "rel", 0.05),
        _row("III", "carnot engine eta", "1", 0.700, sc.eta_max, None, "rel", 0.001),
        _row("III", "otto no-impurity closed-form W", "ueV", 27.2,
             _uev(w_closed), _ev(w_closed), "rel", 0.02),
        _row("III", "otto no-impurity closed-form eta", "1", 0.624, eta_closed,
             None, "rel", 0.01),
        _row("III", "carnot no-impurity closed-form W", "ueV", 31.8,
             _uev(wc_closed), _ev(wc_closed), "info",
             note="closed form evaluates to 34.2 ueV at these inputs; the "
                  "tabulated 31.8 ueV is not reproducible from it"),
    ]


def _table_iv(steps: int, n_max: int, workers) -> list[TableRow]:
    ax_f = SweepAxis(AxisParam.IMPURITY_STRENGTH, 1.0, 10.0, steps)
    ax_p = SweepAxis(AxisParam.IMPURITY_POSITION, 0.0, 1.0, steps)
    otto = CycleSpec(CycleKind.OTTO, LengthVariation(100 * NM, 129 * NM),
                     2.49, T_COLD, fixed_f=5.0, fixed_p=0.5)
    so = summarize(run_sweep(otto, ax_f, ax_p, n_max=n_max, workers=workers))
    carnot = CycleSpec(CycleKind.CARNOT, LengthVariation(100 * NM, 129 * NM),
                       2.49, T_COLD, fixed_f=5.0, fixed_p=0.5)
    sc = summarize(run_sweep(carnot, ax_f, ax_p, n_max=n_max, workers=workers))
    return [
        _row("IV", "otto refrigerator |W|_max", "ueV", 0.119,
             _uev(so.abs_w_max), _ev(so.abs_w_max), "rel", 0.10),
        _row("IV", "otto refrigerator COP_max", "1", 1.506, so.cop_max, None,
             "band", (1.47, 1.55)),
        _row("IV", "carnot refrigerator |W|_max", "ueV", 0.119,
             _uev(sc.abs_w_max), _ev(sc.abs_w_max), "rel", 0.10),
        _row("IV", "carnot refrigerator COP_max", "1", 1.500, sc.cop_max, None,
             "band", (1.47, 1.55)),
    ]


def _table_ii(steps: int, n_max: int, workers) -> list[TableRow]:
    band = (0.05, 0.3)  # meV; references are density-plot reads
    rows = []
    presets = [
        ("T_hot 25 K, L 10-100 nm", 0.5,
         SweepAxis(AxisParam.IMPURITY_POSITION, 0.0, 1.0, steps),
         SweepAxis(AxisParam.WELL_LENGTH, 10 * NM, 100 * NM, steps),
         dict(t_hot=25.0, fixed_length=25 * NM), 0.1, 0.1, None),
        ("L 25 nm, T_hot 5-35 K", 0.5,
         SweepAxis(AxisParam.IMPURITY_POSITION, 0.0, 1.0, steps),
         SweepAxis(AxisParam.HOT_TEMPERATURE, 5.0, 35.0, steps),
         dict(t_hot=25.0, fixed_length=25 * NM), 0.15, 0.1, None),
        ("T_hot 5-35 K, L 20-50 nm", 0.5,
         SweepAxis(AxisParam.HOT_TEMPERATURE, 5.0, 35.0, steps),
         SweepAxis(AxisParam.WELL_LENGTH, 20 * NM, 50 * NM, steps),
         dict(t_hot=25.0, fixed_length=25 * NM), 0.15, 0.125, 0.15),
    ]
    for label, p_engine, ax, ay, kv, ref_he, ref_cp, p_pump in presets:
        tmpl = CycleSpec(CycleKind.OTTO, StrengthVariation(1.0, -1.0),
                         kv["t_hot"], T_COLD, fixed_p=p_engine,
                         fixed_length=kv["fixed_length"])
        s = summarize(run_sweep(tmpl, ax, ay, n_max=n_max, workers=workers))
        rows.append(_row("II", f"engine W_max ({label})", "meV", ref_he,
                         _mev(s.w_max), _ev(s.w_max), "band", band))
        if p_pump is not None:
            # the cold-pump phase vanishes with the impurity on the midpoint
            # node; its row is evaluated with the impurity off-centre
            tmpl = CycleSpec(CycleKind.OTTO, StrengthVariation(1.0, -1.0),
                             kv["t_hot"], T_COLD, fixed_p=p_pump,
                             fixed_length=kv["fixed_length"])
            s = summarize(run_sweep(tmpl, ax, ay, n_max=n_max, workers=workers))
        rows.append(_row("II", f"cold pump |W|_max ({label})", "meV", ref_cp,
                         _mev(s.abs_w_max), _ev(s.abs_w_max), "band", band))
    return rows


def _table_v(steps: int, n_max: int, workers) -> list[TableRow]:
    rows = []
    presets = [
        ("T_hot 25 K, L 20-80 nm, f 1-6", 25.0,
         SweepAxis(AxisParam.WELL_LENGTH, 20 * NM, 80 * NM, steps),
         SweepAxis(AxisParam.IMPURITY_STRENGTH, 1.0, 6.0, steps),
         40 * NM, 7.5, 5.0),
        ("L 40 nm, T_hot 5-35 K, f 1-3", 25.0,
         SweepAxis(AxisParam.HOT_TEMPERATURE, 5.0, 35.0, steps),
         SweepAxis(AxisParam.IMPURITY_STRENGTH, 1.0, 3.0, steps),
         40 * NM, 5.0, 10.0),
        ("f 5, T_hot 5-35 K, L 20-80 nm", 25.0,
         SweepAxis(AxisParam.HOT_TEMPERATURE, 5.0, 35.0, steps),
         SweepAxis(AxisParam.WELL_LENGTH, 20 * NM, 80 * NM, steps),
         40 * NM, 4.0, 2.0),
    ]
    for i, (label, t_hot, ax, ay, length, ref_he, ref_cp) in enumerate(presets):
        # rows with a strength axis get a placeholder fixed_f; it is
        # substituted per cell
        tmpl = CycleSpec(CycleKind.OTTO, PositionVariation(0.1, 0.8),
                         t_hot, T_COLD, fixed_f=5.0, fixed_length=length)
        s = summarize(run_sweep(tmpl, ax, ay, n_max=n_max, workers=workers))
        rows.append(_row("V", f"engine W_max ({label})", "ueV", ref_he,
                         _uev(s.w_max), _ev(s.w_max), "band", (ref_he / 2, ref_he * 2)))
        rows.append(_row("V", f"cold pump |W|_max ({label})", "ueV", ref_cp,
                         _uev(s.abs_w_max), _ev(s.abs_w_max), "band",
                         (ref_cp / 2, ref_cp * 2)))
        rows.append(_row("V", f"cold pump COP_max ({label})", "1",
                         (1750.0, 800.0, 2000.0)[i], s.cop_max, None, "info",
                         note="COP extrema sit on near-zero-work cells; "
                              "grid- and threshold-sensitive"))
    return rows


def _table_vi(steps: int, n_max: int, workers) -> list[TableRow]:
    r1 = CycleSpec(CycleKind.OTTO, PositionVariation(0.2, 0.5), 10.0, T_COLD,
                   fixed_f=0.03, fixed_length=40 * NM,
                   method=SpectrumMethod.STRONG_PERTURB1)
    s1 = summarize(run_sweep(
        r1, SweepAxis(AxisParam.IMPURITY_STRENGTH, 0.01, 0.08, steps),
        SweepAxis(AxisParam.WELL_LENGTH, 20 * NM, 80 * NM, steps),
        n_max=n_max, workers=workers))
    r2 = CycleSpec(CycleKind.OTTO, PositionVariation(0.2, 0.8), 10.0, T_COLD,
                   fixed_f=0.03, fixed_length=40 * NM,
                   method=SpectrumMethod.STRONG_PERTURB1)
    s2 = summarize(run_sweep(
        r2, SweepAxis(AxisParam.HOT_TEMPERATURE, 5.0, 35.0, steps),
        SweepAxis(AxisParam.WELL_LENGTH, 20 * NM, 80 * NM, steps),
        n_max=n_max, workers=workers))
    return [
        _row("VI", "engine eta_max (p 0.2->0.5, f 0.01-0.08, T_hot 10 K)", "1",
             0.847, s1.eta_max, None, "rel", 0.05),
        _row("VI", "engine W_max (p 0.2->0.5)", "meV", 0.003,
             _mev(s1.w_max), _ev(s1.w_max), "info"),
        _row("VI", "engine eta_max (p 0.2->0.8, f 0.03, T_hot 5-35 K)", "1",
             0.94, s2.eta_max, None, "rel", 0.05),
        _row("VI", "engine W_max (p 0.2->0.8)", "meV", 0.1,
             _mev(s2.w_max), _ev(s2.w_max), "info"),
    ]


_RUNNERS = {
    "II": _table_ii,
    "III": _table_iii,
    "IV": _table_iv,
    "V": _table_v,
    "VI": _table_vi,
}


def run_table(table_id: str, steps: int = 101, n_max: int = 200,
              workers: int | None = None) -> list[TableRow]:
    """Run the preset sweeps behind one reference table and compare."""
    if table_id not in _RUNNERS:
        raise ConfigError(
            f"unknown table id {table_id!r}; choose from {', '.join(TABLE_IDS)}")
    return _RUNNERS[table_id](steps, n_max, workers)
