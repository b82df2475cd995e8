"""Backend equivalence and root-completeness checks for the kernels."""

import math

import numpy as np
import pytest

from qwell import BracketError, backend_name
from qwell import _pure

try:
    from qwell import _speedups
except ImportError:
    _speedups = None

CASES = [
    (1.0, 0.5), (-1.0, 0.37), (0.5, 0.25), (-0.5, 0.62),
    (0.02, 0.5), (-0.02, 0.3), (2.0, 0.11), (0.44, 0.5),
    (-0.0005, 0.5), (1e5, 0.77), (-3.3, 0.5), (0.3, 0.41),
]


def brute_root_count(f, p, z_max, samples=400001):
    """Independent dense-scan count of dispersion roots below z_max."""
    zs = np.linspace(1e-9, z_max, samples)
    rs = zs * f * np.sin(zs) - 2.0 * np.sin(p * zs) * np.sin((1.0 - p) * zs)
    count = int(np.sum(np.signbit(rs[:-1]) != np.signbit(rs[1:])))
    count += int(np.sum(rs == 0.0))
    return count


@pytest.mark.parametrize("f,p", CASES)
def test_roots_satisfy_residual(f, p):
    roots = _pure.positive_levels(f, p, 12, 1e-12)
    assert np.all(np.diff(roots) > 0) or (roots[0] == 0.0 and np.all(np.diff(roots) >= 0))
    for z in roots:
        if z == 0.0:
            continue
        scale = abs(z * f) + 2.0 + z
        assert abs(_pure._residual_pos(z, f, p)) < 1e-9 * scale


@pytest.mark.parametrize("f,p", [(0.8, 0.33), (-0.8, 0.33), (1.7, 0.21),
                                 (-0.09, 0.44), (0.26, 0.71), (-2.4, 0.55)])
def test_root_completeness_against_dense_scan(f, p):
    n = 12
    roots = _pure.positive_levels(f, p, n, 1e-12)
    z_max = roots[-1] + 0.3
    # no root in between missed, none duplicated
    assert brute_root_count(f, p, z_max) == n
    assert np.all(np.diff(roots) > 1e-9)


def test_cluster_of_node_and_partner_resolved():
    # weak barrier at the midpoint: every even bare level keeps an exact
    # node root at 2k*pi with the partner root displaced by O(f)
    roots = _pure.positive_levels(-0.0005, 0.5, 8, 1e-12)
    for k in (1, 2, 3, 4):
        assert roots[2 * k - 1] == pytest.approx(2 * k * math.pi, rel=1e-14)
        assert roots[2 * k - 2] < 2 * k * math.pi
        assert 2 * k * math.pi - roots[2 * k - 2] < 0.05


def test_zero_energy_threshold_case():
    # f exactly 2 p (1 - p): the ground state sits at zero energy
    roots = _pure.positive_levels(0.5, 0.5, 4, 1e-12)
    assert roots[0] == 0.0
    assert roots[1] == pytest.approx(2 * math.pi, rel=1e-14)


def test_bound_level_threshold_law():
    for f in np.linspace(0.05, 0.95, 10):
        for p in np.linspace(0.05, 0.95, 10):
            z = _pure.bound_level(float(f), float(p), 1e-12)
            assert (not math.isnan(z)) == (f < 2 * p * (1 - p))
    assert math.isnan(_pure.bound_level(-0.2, 0.5, 1e-12))


def test_bound_level_strong_limit():
    # kappa*L -> 1/f as f -> 0
    for f in (0.05, 0.02, 0.01):
        z = _pure.bound_level(f, 0.5, 1e-12)
        assert z * f == pytest.approx(1.0, abs=1e-6)


def test_bracket_error_reports_level():
    with pytest.raises(ValueError):
        _pure.positive_levels(0.0, 0.5, 3, 1e-12)
    with pytest.raises(ValueError):
        _pure.positive_levels(1.0, 0.0, 3, 1e-12)


def test_boltzmann_weights_shifted():
    e = np.array([-5.0, 0.0, 1.0, 3.0])
    w, z, m1, tail = _pure.boltzmann_weights(e, 2.0)
    expected_w = np.exp(-2.0 * (e - e[0]))
    np.testing.assert_allclose(w, expected_w, rtol=1e-15)
    assert z == pytest.approx(expected_w.sum(), rel=1e-15)
    assert m1 == pytest.approx((expected_w * (e - e[0])).sum(), rel=1e-15)
    assert tail == pytest.approx(expected_w[-1] / expected_w.sum(), rel=1e-15)


@pytest.mark.skipif(_speedups is None, reason="compiled extension not built")
class TestBackendEquivalence:
    @pytest.mark.parametrize("f,p", CASES)
    def test_positive_levels_match(self, f, p):
        a = _pure.positive_levels(f, p, 60, 1e-12)
        b = _speedups.positive_levels(f, p, 60, 1e-12)
        mask = a > 0
        np.testing.assert_allclose(a[mask], b[mask], rtol=1e-10)
        np.testing.assert_array_equal(a == 0.0, b == 0.0)

    @pytest.mark.parametrize("f,p", [(0.02, 0.5), (0.3, 0.41), (0.44, 0.5)])
    def test_bound_level_match(self, f, p):
        a = _pure.bound_level(f, p, 1e-12)
        b = _speedups.bound_level(f, p, 1e-12)
        assert a == pytest.approx(b, rel=1e-10)

    def test_boltzmann_weights_match(self):
        rng = np.random.RandomState(11)
        e = np.sort(rng.uniform(-2.0, 5.0, 500))
        wa, za, ma, ta = _pure.boltzmann_weights(e, 1.7)
        wb, zb, mb, tb = _speedups.boltzmann_weights(e, 1.7)
        np.testing.assert_allclose(wa, wb, rtol=1e-13)
        assert za == pytest.approx(zb, rel=1e-13)
        assert ma == pytest.approx(mb, rel=1e-13)
        assert ta == pytest.approx(tb, rel=1e-13)

    def test_backend_name(self):
        assert backend_name() in ("compiled", "pure")
