"""Pure NumPy/Python kernels: dispersion-root isolation and Boltzmann sums.

This is the fallback backend for the compiled extension (qwell._speedups)
and the reference implementation it is tested against.  Both backends
provide:

  positive_levels(f, p, n, rel_tol)  -- first n positive roots of the
      oscillatory dispersion relation, as dimensionless kL values
  bound_level(f, p, rel_tol)         -- root of the hyperbolic dispersion
      relation (kappa*L); NaN when no negative-energy solution exists
  boltzmann_weights(energies, beta)  -- overflow-safe shifted Boltzmann
      weights, their sum, first moment and tail fraction

Roots are isolated level by level from analytic brackets: every eigenvalue
sits between a bare-box value m*pi and a neighbouring entry of the merged
hard-wall sub-well ladder {k*pi/p} U {k*pi/(1-p)}, with exactly one root
per bracket.  That stays exact even where two roots cluster around a node
(sin(m*pi*p) = 0), which a uniform global scan can miss for small |f|.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import BracketError

_BASE_SAMPLES = 64
_REFINE_FACTOR = 16
_MAX_BISECT = 240


def _residual_pos(z: float, f: float, p: float) -> float:
    return z * f * math.sin(z) - 2.0 * math.sin(p * z) * math.sin((1.0 - p) * z)


def _residual_pos_vec(z: np.ndarray, f: float, p: float) -> np.ndarray:
    return z * f * np.sin(z) - 2.0 * np.sin(p * z) * np.sin((1.0 - p) * z)


def _residual_neg_scaled(z: float, f: float, p: float) -> float:
    # hyperbolic residual times 2*exp(-kappa*L): same roots, never overflows;
    # the expm1 grouping keeps it accurate near z = 0 where the plain form
    # cancels to roundoff
    return (-(z * f + 1.0) * math.expm1(-2.0 * z)
            + math.expm1(-2.0 * p * z) + math.expm1(-2.0 * (1.0 - p) * z))


def _node_tol(z: float, f: float) -> float:
    # residual roundoff at a bare-box node, with wide margin
    return 4e-15 * (4.0 + z + abs(f) * z * z)


def _subwell_ladder(p: float, count: int) -> np.ndarray:
    """First `count` values of the merged ladder {k*pi/p} U {k*pi/(1-p)}."""
    out = np.empty(count)
    step_a = math.pi / p
    step_b = math.pi / (1.0 - p)
    ia = 1
    ib = 1
    for i in range(count):
        va = ia * step_a
        vb = ib * step_b
        if va <= vb:
            out[i] = va
            ia += 1
        else:
            out[i] = vb
            ib += 1
    return out


def _refine(a: float, b: float, ra: float, rb: float,
            f: float, p: float, rel_tol: float) -> float:
    """Bisection to relative width rel_tol, then one secant polish."""
    for _ in range(_MAX_BISECT):
        if (b - a) <= rel_tol * b:
            break
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        rm = _residual_pos(m, f, p)
        if rm == 0.0:
            return m
        if (ra < 0.0) != (rm < 0.0):
            b, rb = m, rm
        else:
            a, ra = m, rm
    if rb != ra:
        z = b - rb * (b - a) / (rb - ra)
        if a <= z <= b:
            return z
    return 0.5 * (a + b)


def _isolate(a: float, b: float, f: float, p: float, rel_tol: float,
             level: int, node_right: bool) -> float:
    """Find the single root inside [a, b].

    The bracket endpoint named by `node_right` may itself be the root when
    the impurity sits on a node of that level; the opposite endpoint always
    belongs to a neighbouring level and is excluded.
    """
    if b <= a:
        # collapsed bracket from a ladder tie: the root is the shared node
        z = b if node_right else a
        if abs(_residual_pos(z, f, p)) <= _node_tol(z, f):
            return z
        raise BracketError(level, f, p, a, b)
    node_z = b if node_right else a
    if node_z > 0.0 and abs(_residual_pos(node_z, f, p)) <= _node_tol(node_z, f):
        return node_z
    samples = _BASE_SAMPLES
    for _ in range(2):
        pad = (b - a) * 1e-12
        xs = np.linspace(a + pad, b - pad, samples + 1)
        rs = _residual_pos_vec(xs, f, p)
        zeros = np.flatnonzero(rs == 0.0)
        if zeros.size:
            return float(xs[zeros[0]])
        flips = np.flatnonzero(np.signbit(rs[:-1]) != np.signbit(rs[1:]))
        if flips.size:
            i = int(flips[0])
            return _refine(float(xs[i]), float(xs[i + 1]),
                           float(rs[i]), float(rs[i + 1]), f, p, rel_tol)
        samples *= _REFINE_FACTOR
    raise BracketError(level, f, p, a, b)


def positive_levels(f: float, p: float, n: int, rel_tol: float) -> np.ndarray:
    """First n positive roots (kL) of the oscillatory dispersion relation."""
    if not 0.0 < p < 1.0:
        raise ValueError("positive_levels requires 0 < p < 1")
    if f == 0.0 or not math.isfinite(f):
        raise ValueError("impurity strength must be finite and nonzero")
    if n < 1:
        raise ValueError("need at least one level")
    s = f - 2.0 * p * (1.0 - p)
    shifted = f > 0.0 and s <= 0.0  # ground state at or below zero energy
    ladder = _subwell_ladder(p, n + 1)
    out = np.empty(n)
    for m in range(1, n + 1):
        if f < 0.0:
            a, b = m * math.pi, float(ladder[m - 1])
            node_right = False
        elif shifted:
            a, b = float(ladder[m - 1]), (m + 1) * math.pi
            node_right = True
        else:
            a = float(ladder[m - 2]) if m >= 2 else 0.0
            b = m * math.pi
            node_right = True
        out[m - 1] = _isolate(a, b, f, p, rel_tol, m, node_right)
    if f > 0.0 and s == 0.0:
        # threshold case: a zero-energy state exists; keep it as level 1
        out = np.concatenate(([0.0], out[:-1]))
    return out


def bound_level(f: float, p: float, rel_tol: float) -> float:
    """Root kappa*L of the hyperbolic dispersion relation, NaN if absent.

    A negative-energy solution exists only for an attractive impurity with
    f < 2 p (1 - p); the root is bounded above by 1/f.
    """
    if f <= 0.0 or not 0.0 < p < 1.0 or not math.isfinite(f):
        return math.nan
    if f - 2.0 * p * (1.0 - p) >= 0.0:
        return math.nan
    lo = 1e-9
    rlo = _residual_neg_scaled(lo, f, p)
    if rlo >= 0.0:
        # root below the probe point (extremely close to threshold)
        lo, rlo = 1e-300, -1.0
        hi, rhi = 1e-9, _residual_neg_scaled(1e-9, f, p)
    else:
        cap = 1.25 / f
        hi = lo
        while True:
            hi = min(hi * 2.0, cap)
            rhi = _residual_neg_scaled(hi, f, p)
            if rhi > 0.0:
                break
            if hi >= cap:
                return math.nan
            lo, rlo = hi, rhi
    for _ in range(_MAX_BISECT):
        if (hi - lo) <= rel_tol * hi:
            break
        m = 0.5 * (lo + hi)
        if m <= lo or m >= hi:
            break
        rm = _residual_neg_scaled(m, f, p)
        if rm == 0.0:
            return m
        if (rlo < 0.0) != (rm < 0.0):
            hi, rhi = m, rm
        else:
            lo, rlo = m, rm
    if rhi != rlo:
        z = hi - rhi * (hi - lo) / (rhi - rlo)
        if lo <= z <= hi:
            return z
    return 0.5 * (lo + hi)


def boltzmann_weights(energies: np.ndarray, beta: float):
    """Shifted Boltzmann weights for an ascending energy array.

    Returns (weights, z_shift, first_moment, tail) where weights are
    exp(-beta (E - E_min)), z_shift their sum, first_moment
    sum(w * (E - E_min)) and tail = weights[-1] / z_shift.
    """
    e = np.asarray(energies, dtype=float)
    d = e - e[0]
    w = np.exp(-beta * d)
    z = float(w.sum())
    m1 = float((w * d).sum())
    return w, z, m1, float(w[-1] / z)
