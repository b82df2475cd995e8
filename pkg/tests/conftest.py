"""Shared fixtures: the acceptance-grade sweeps, built once per session."""

import time

import pytest

from qwell import (AxisParam, CycleKind, CycleSpec, LengthVariation,
                   PositionVariation, SpectrumMethod, StrengthVariation,
                   SweepAxis, run_sweep)

NM = 1e-9


@pytest.fixture(scope="session")
def table3_grids():
    """Length-varied 100 -> 163 nm sweep at T 5/1.5 K, f x p, 101x101."""
    ax_f = SweepAxis(AxisParam.IMPURITY_STRENGTH, 1.0, 10.0, 101)
    ax_p = SweepAxis(AxisParam.IMPURITY_POSITION, 0.0, 1.0, 101)
    t0 = time.monotonic()
    otto = run_sweep(CycleSpec(CycleKind.OTTO, LengthVariation(100 * NM, 163 * NM),
                               5.0, 1.5, fixed_f=5.0, fixed_p=0.5), ax_f, ax_p)
    carnot = run_sweep(CycleSpec(CycleKind.CARNOT, LengthVariation(100 * NM, 163 * NM),
                                 5.0, 1.5, fixed_f=5.0, fixed_p=0.5), ax_f, ax_p)
    return {"otto": otto, "carnot": carnot, "seconds": time.monotonic() - t0}


@pytest.fixture(scope="session")
def table4_grids():
    """Length-varied 100 -> 129 nm sweep at T 2.49/1.5 K, f x p, 101x101."""
    ax_f = SweepAxis(AxisParam.IMPURITY_STRENGTH, 1.0, 10.0, 101)
    ax_p = SweepAxis(AxisParam.IMPURITY_POSITION, 0.0, 1.0, 101)
    otto = run_sweep(CycleSpec(CycleKind.OTTO, LengthVariation(100 * NM, 129 * NM),
                               2.49, 1.5, fixed_f=5.0, fixed_p=0.5), ax_f, ax_p)
    carnot = run_sweep(CycleSpec(CycleKind.CARNOT, LengthVariation(100 * NM, 129 * NM),
                                 2.49, 1.5, fixed_f=5.0, fixed_p=0.5), ax_f, ax_p)
    return {"otto": otto, "carnot": carnot}


@pytest.fixture(scope="session")
def fig8a_grid():
    """Strength-varied (+1, -1) at T_hot 25 K, p x L(10..100 nm), 101x101."""
    tmpl = CycleSpec(CycleKind.OTTO, StrengthVariation(1.0, -1.0), 25.0, 1.5,
                     fixed_p=0.5, fixed_length=25 * NM)
    return run_sweep(tmpl,
                     SweepAxis(AxisParam.IMPURITY_POSITION, 0.0, 1.0, 101),
                     SweepAxis(AxisParam.WELL_LENGTH, 10 * NM, 100 * NM, 101))


@pytest.fixture(scope="session")
def fig15a_grid():
    """Position-varied 0.1 -> 0.8 at T_hot 10 K, f(1..6) x L(20..80 nm)."""
    tmpl = CycleSpec(CycleKind.OTTO, PositionVariation(0.1, 0.8), 10.0, 1.5,
                     fixed_f=3.0, fixed_length=40 * NM)
    return run_sweep(tmpl,
                     SweepAxis(AxisParam.IMPURITY_STRENGTH, 1.0, 6.0, 51),
                     SweepAxis(AxisParam.WELL_LENGTH, 20 * NM, 80 * NM, 121))


@pytest.fixture(scope="session")
def table2_grids():
    """The three strength-varied (+1, -1) presets behind table II."""
    ax_p = SweepAxis(AxisParam.IMPURITY_POSITION, 0.0, 1.0, 101)
    r1 = run_sweep(CycleSpec(CycleKind.OTTO, StrengthVariation(1.0, -1.0),
                             25.0, 1.5, fixed_p=0.5, fixed_length=25 * NM),
                   ax_p, SweepAxis(AxisParam.WELL_LENGTH, 10 * NM, 100 * NM, 101))
    r2 = run_sweep(CycleSpec(CycleKind.OTTO, StrengthVariation(1.0, -1.0),
                             25.0, 1.5, fixed_p=0.5, fixed_length=25 * NM),
                   ax_p, SweepAxis(AxisParam.HOT_TEMPERATURE, 5.0, 35.0, 101))
    r3_engine = run_sweep(CycleSpec(CycleKind.OTTO, StrengthVariation(1.0, -1.0),
                                    25.0, 1.5, fixed_p=0.5, fixed_length=25 * NM),
                          SweepAxis(AxisParam.HOT_TEMPERATURE, 5.0, 35.0, 101),
                          SweepAxis(AxisParam.WELL_LENGTH, 20 * NM, 50 * NM, 101))
    r3_pump = run_sweep(CycleSpec(CycleKind.OTTO, StrengthVariation(1.0, -1.0),
                                  25.0, 1.5, fixed_p=0.15, fixed_length=25 * NM),
                        SweepAxis(AxisParam.HOT_TEMPERATURE, 5.0, 35.0, 101),
                        SweepAxis(AxisParam.WELL_LENGTH, 20 * NM, 50 * NM, 101))
    return {"r1": r1, "r2": r2, "r3_engine": r3_engine, "r3_pump": r3_pump}


@pytest.fixture(scope="session")
def table6_grids():
    """The two strong-coupling position-varied presets behind table VI."""
    r1 = run_sweep(CycleSpec(CycleKind.OTTO, PositionVariation(0.2, 0.5),
                             10.0, 1.5, fixed_f=0.03, fixed_length=40 * NM,
                             method=SpectrumMethod.STRONG_PERTURB1),
                   SweepAxis(AxisParam.IMPURITY_STRENGTH, 0.01, 0.08, 101),
                   SweepAxis(AxisParam.WELL_LENGTH, 20 * NM, 80 * NM, 101))
    r2 = run_sweep(CycleSpec(CycleKind.OTTO, PositionVariation(0.2, 0.8),
                             10.0, 1.5, fixed_f=0.03, fixed_length=40 * NM,
                             method=SpectrumMethod.STRONG_PERTURB1),
                   SweepAxis(AxisParam.HOT_TEMPERATURE, 5.0, 35.0, 101),
                   SweepAxis(AxisParam.WELL_LENGTH, 20 * NM, 80 * NM, 101))
    return {"r1": r1, "r2": r2}
