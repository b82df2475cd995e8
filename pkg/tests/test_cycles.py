import math

import numpy as np
import pytest

from qwell import (CODATA2018, CycleError, CycleKind, CycleSpec,
                   LengthVariation, Phase, PositionVariation,
                   SpectrumMethod, StrengthVariation, ValidationError,
                   beta, carnot_no_impurity_closed, carnot_run,
                   carnot_strong_closed, classify, figure_of_merit, gamma,
                   otto_no_impurity_closed, otto_run, otto_strong_closed,
                   reversible_cold_length, to_ev)
from qwell.cycles import _otto_heats

NM = 1e-9


class TestClassifier:
    @pytest.mark.parametrize("triple,phase,merit", [
        ((1.0, -0.5, 0.5), Phase.HEAT_ENGINE, 0.5),
        ((-1.0, 0.8, -0.2), Phase.REFRIGERATOR, 4.0),
        ((0.3, -0.5, -0.2), Phase.COLD_PUMP, 2.5),
        ((-0.3, -0.2, -0.5), Phase.JOULE_PUMP, 1.0),
    ])
    def test_sign_patterns(self, triple, phase, merit):
        got = classify(*triple)
        assert got is phase
        assert figure_of_merit(got, *triple) == pytest.approx(merit, rel=1e-14)

    def test_degenerate_below_threshold(self):
        assert classify(1.0, -1.0, 1e-12) is Phase.DEGENERATE
        assert classify(1.0, -1e-12, 1.0) is Phase.DEGENERATE
        assert classify(0.0, 0.0, 0.0) is Phase.DEGENERATE

    def test_unrecognised_pattern_degenerate(self):
        assert classify(1.0, 1.0, 2.0) is Phase.DEGENERATE

    def test_pattern_map_injective(self):
        phases = {classify(*t) for t in [(1.0, -0.5, 0.5), (-1.0, 0.8, -0.2),
                                         (0.3, -0.5, -0.2), (-0.3, -0.2, -0.5)]}
        assert len(phases) == 4


class TestCycleSpecValidation:
    def test_temperature_ordering(self):
        with pytest.raises(ValidationError):
            CycleSpec(CycleKind.OTTO, LengthVariation(1e-7, 2e-7), 1.5, 5.0)
        with pytest.raises(ValidationError):
            CycleSpec(CycleKind.OTTO, LengthVariation(1e-7, 2e-7), 5.0, -1.0)

    def test_carnot_requires_length_variation(self):
        with pytest.raises(ValidationError):
            CycleSpec(CycleKind.CARNOT, StrengthVariation(1.0, -1.0), 5.0, 1.5,
                      fixed_p=0.5, fixed_length=1e-7)
        with pytest.raises(ValidationError):
            CycleSpec(CycleKind.CARNOT, PositionVariation(0.2, 0.5), 5.0, 1.5,
                      fixed_f=1.0, fixed_length=1e-7)

    def test_required_fixed_fields(self):
        with pytest.raises(ValidationError):
            CycleSpec(CycleKind.OTTO, StrengthVariation(1.0, -1.0), 5.0, 1.5)
        with pytest.raises(ValidationError):
            CycleSpec(CycleKind.OTTO, PositionVariation(0.1, 0.8), 5.0, 1.5)
        with pytest.raises(ValidationError):
            # impurity strength set but no position
            CycleSpec(CycleKind.OTTO, LengthVariation(1e-7, 2e-7), 5.0, 1.5,
                      fixed_f=2.0)


class TestOttoRun:
    def test_no_variation_is_degenerate(self):
        spec = CycleSpec(CycleKind.OTTO, LengthVariation(100 * NM, 100 * NM),
                         5.0, 1.5, method=SpectrumMethod.BARE_ISW)
        r = otto_run(spec)
        assert r.phase is Phase.DEGENERATE
        assert r.work == pytest.approx(0.0, abs=1e-40)

    def test_bare_length_varied_reference_values(self):
        spec = CycleSpec(CycleKind.OTTO, LengthVariation(100 * NM, 163 * NM),
                         5.0, 1.5, method=SpectrumMethod.BARE_ISW)
        r = otto_run(spec, n_max=400)
        assert to_ev(r.work) * 1e6 == pytest.approx(29.554, abs=0.01)
        assert r.phase is Phase.HEAT_ENGINE
        # uniform level scaling makes the efficiency exactly geometric
        assert r.merit == pytest.approx(1.0 - (100.0 / 163.0) ** 2, rel=1e-12)

    def test_strength_varied_engine_cell(self):
        spec = CycleSpec(CycleKind.OTTO, StrengthVariation(1.0, -1.0), 25.0, 1.5,
                         fixed_p=0.5, fixed_length=25 * NM)
        r = otto_run(spec)
        assert r.phase is Phase.HEAT_ENGINE
        assert r.work > 0

    def test_first_law_random_specs(self):
        rng = np.random.RandomState(99)
        for _ in range(40):
            t_cold = rng.uniform(1.0, 4.0)
            spec = CycleSpec(CycleKind.OTTO,
                             PositionVariation(rng.uniform(0.05, 0.95),
                                               rng.uniform(0.05, 0.95)),
                             t_cold + rng.uniform(1.0, 25.0), t_cold,
                             fixed_f=rng.uniform(0.5, 6.0),
                             fixed_length=rng.uniform(20, 120) * NM)
            r = otto_run(spec)
            scale = max(abs(r.q_in), abs(r.q_out), 1e-30)
            assert abs(r.work - (r.q_in + r.q_out)) <= 1e-12 * scale

    def test_swap_antisymmetry_of_heat_formulas(self):
        rng = np.random.RandomState(4)
        e_a = np.sort(rng.uniform(1.0, 9.0, 40)) * CODATA2018.boltzmann
        e_b = np.sort(rng.uniform(1.0, 9.0, 40)) * CODATA2018.boltzmann

        def occ(e, t):
            w = np.exp(-beta(t) * (e - e[0]))
            return w / w.sum()

        q_in, q_out, work = _otto_heats(e_a, e_b, occ(e_a, 8.0), occ(e_b, 2.0))
        q_in2, q_out2, work2 = _otto_heats(e_b, e_a, occ(e_b, 2.0), occ(e_a, 8.0))
        assert q_in2 == pytest.approx(-q_out, rel=1e-12)
        assert q_out2 == pytest.approx(-q_in, rel=1e-12)
        assert work2 == pytest.approx(-work, rel=1e-12)

    def test_mirror_invariance(self):
        base = dict(t_hot=25.0, t_cold=1.5, fixed_length=25 * NM)
        for p in (0.2, 0.35):
            a = otto_run(CycleSpec(CycleKind.OTTO, StrengthVariation(1.0, -1.0),
                                   fixed_p=p, **base))
            b = otto_run(CycleSpec(CycleKind.OTTO, StrengthVariation(1.0, -1.0),
                                   fixed_p=1 - p, **base))
            assert a.work == pytest.approx(b.work, rel=1e-9)
            assert a.q_in == pytest.approx(b.q_in, rel=1e-9)
        a = otto_run(CycleSpec(CycleKind.OTTO, PositionVariation(0.1, 0.8),
                               10.0, 1.5, fixed_f=3.0, fixed_length=40 * NM))
        b = otto_run(CycleSpec(CycleKind.OTTO, PositionVariation(0.9, 0.2),
                               10.0, 1.5, fixed_f=3.0, fixed_length=40 * NM))
        assert a.work == pytest.approx(b.work, rel=1e-9)

    def test_one_sided_bound_state_rejected(self):
        spec = CycleSpec(CycleKind.OTTO, StrengthVariation(0.02, -0.02), 5.0, 1.5,
                         fixed_p=0.5, fixed_length=25 * NM,
                         method=SpectrumMethod.NUMERICAL)
        with pytest.raises(CycleError):
            otto_run(spec, n_max=30)

    def test_auto_extension_on_hot_cell(self):
        # L = 200 nm at 35 K needs more than 200 levels
        spec = CycleSpec(CycleKind.OTTO, LengthVariation(200 * NM, 260 * NM),
                         35.0, 1.5, method=SpectrumMethod.BARE_ISW)
        r = otto_run(spec, n_max=100)
        assert r.phase is Phase.HEAT_ENGINE


class TestCarnotRun:
    def test_engine_efficiency_exact(self):
        spec = CycleSpec(CycleKind.CARNOT, LengthVariation(100 * NM, 163 * NM),
                         5.0, 1.5, fixed_f=5.0, fixed_p=0.3)
        r = carnot_run(spec)
        assert r.phase is Phase.HEAT_ENGINE
        assert r.merit == 1.0 - 1.5 / 5.0
        assert r.work / r.q_in == pytest.approx(r.merit, abs=1e-12)

    def test_bare_reference_value(self):
        spec = CycleSpec(CycleKind.CARNOT, LengthVariation(100 * NM, 163 * NM),
                         5.0, 1.5, method=SpectrumMethod.BARE_ISW)
        r = carnot_run(spec, n_max=400)
        assert to_ev(r.work) * 1e6 == pytest.approx(37.083, abs=0.01)

    def test_refrigerator_cop(self):
        spec = CycleSpec(CycleKind.CARNOT, LengthVariation(100 * NM, 129 * NM),
                         2.49, 1.5, method=SpectrumMethod.BARE_ISW)
        r = carnot_run(spec, n_max=400)
        assert r.phase is Phase.REFRIGERATOR
        assert r.merit == pytest.approx(1.5 / 0.99, rel=1e-9)

    def test_degenerate_at_reversible_lengths(self):
        lc = reversible_cold_length(100 * NM, 5.0, 1.5)
        spec = CycleSpec(CycleKind.CARNOT, LengthVariation(100 * NM, lc),
                         5.0, 1.5, method=SpectrumMethod.BARE_ISW)
        r = carnot_run(spec, n_max=500)
        assert r.phase is Phase.DEGENERATE
        assert r.reversibility_residual < 1e-12

    def test_residual_reported_and_enforced(self):
        spec = CycleSpec(CycleKind.CARNOT, LengthVariation(100 * NM, 163 * NM),
                         5.0, 1.5, method=SpectrumMethod.BARE_ISW)
        r = carnot_run(spec)
        assert r.reversibility_residual == pytest.approx(
            (100 / 163) ** 2 * (5.0 / 1.5) - 1.0, rel=1e-12)
        with pytest.raises(ValidationError) as err:
            carnot_run(spec, enforce_reversibility=True)
        assert "1.82574e-07" in str(err.value)

    def test_carnot_bound_on_samples(self, table3_grids):
        for cell in table3_grids["otto"].cells:
            if hasattr(cell, "phase") and cell.phase is Phase.HEAT_ENGINE:
                assert cell.merit <= 1.0 - 1.5 / 5.0 + 1e-9


class TestClosedForms:
    def test_otto_no_impurity_values(self):
        gh, gc = gamma(100 * NM), gamma(163 * NM)
        w, eta = otto_no_impurity_closed(gh, gc, beta(5.0), beta(1.5))
        # independent evaluation of the displayed expression
        expected = 0.5 * (gh - gc) * (1 / (beta(5.0) * gh) - 1 / (beta(1.5) * gc))
        assert w == pytest.approx(expected, rel=1e-14)
        assert to_ev(w) * 1e6 == pytest.approx(27.263, abs=0.005)
        assert eta == pytest.approx(1 - (100 / 163) ** 2, rel=1e-12)

    def test_otto_no_impurity_degenerate_limits(self):
        g = gamma(100 * NM)
        w, eta = otto_no_impurity_closed(g, g, beta(5.0), beta(1.5))
        assert w == pytest.approx(0.0, abs=1e-40)
        assert eta == 0.0

    def test_carnot_no_impurity_limits(self):
        g = gamma(100 * NM)
        assert carnot_no_impurity_closed(g, g, beta(5.0), beta(5.0), 5.0, 5.0) == 0.0
        # vanishes when the reversibility condition holds exactly
        lc = reversible_cold_length(100 * NM, 5.0, 1.5)
        w = carnot_no_impurity_closed(g, gamma(lc), beta(5.0), beta(1.5), 5.0, 1.5)
        assert abs(to_ev(w)) * 1e6 < 1e-9

    def test_carnot_no_impurity_table_inputs(self):
        w = carnot_no_impurity_closed(gamma(100 * NM), gamma(163 * NM),
                                      beta(5.0), beta(1.5), 5.0, 1.5)
        assert to_ev(w) * 1e6 == pytest.approx(34.204, abs=0.005)

    def test_otto_strong_zero_strength_reduction(self):
        g = gamma(40 * NM)
        bh, bc = beta(10.0), beta(1.5)
        r = otto_strong_closed(0.0, 0.2, 0.5, g, bh, bc)
        ph, pc = 0.2, 0.5
        expected_w = ((ph**2 - pc**2) / 2) * (1 / (bc * ph**2) - 1 / (bh * pc**2))
        assert r.work == pytest.approx(expected_w, rel=1e-12)
        assert r.work == pytest.approx(r.q_in + r.q_out, rel=1e-12)
        # eta is the ratio of the closed-form work and heat
        assert r.eta == pytest.approx(1 - ph**2 / pc**2, rel=1e-12)
        # the x,y COP form agrees with |Q_out| / |W| at f = 0
        assert abs(r.cop) == pytest.approx(abs(r.q_out) / abs(r.work), rel=1e-12)

    def test_otto_strong_no_variation(self):
        g = gamma(40 * NM)
        r = otto_strong_closed(0.02, 0.3, 0.3, g, beta(10.0), beta(1.5))
        assert r.work == pytest.approx(0.0, abs=1e-40)

    def test_carnot_strong_identities(self):
        r = carnot_strong_closed(0.03, 0.3, gamma(40 * NM), gamma(80 * NM),
                                 beta(10.0), beta(1.5), 10.0, 1.5)
        assert r.eta == pytest.approx(1 - 1.5 / 10.0, rel=1e-14)
        assert r.cop == pytest.approx(1.5 / 8.5, rel=1e-14)
        assert r.work == pytest.approx((10.0 - 1.5) * (r.s_hot - r.s_cold), rel=1e-12)

    def test_carnot_strong_equal_temperatures_zero_work(self):
        kb = CODATA2018.boltzmann
        r = carnot_strong_closed(0.03, 0.3, gamma(40 * NM), gamma(40 * NM),
                                 beta(10.0), beta(10.0), 10.0, 10.0)
        assert r.work == 0.0
        assert r.s_hot == pytest.approx(r.s_cold, rel=1e-14)
        assert r.s_hot / kb > 0
