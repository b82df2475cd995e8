# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twins of the kernels in qwell._pure.

Same bracket construction and refinement logic; scalar loops run in C.
Behaviour must track qwell._pure (the equivalence is tested).
"""

from libc.math cimport sin, exp, expm1, fabs, isfinite, M_PI, NAN

import numpy as np

from .errors import BracketError

cdef int _BASE_SAMPLES = 64
cdef int _REFINE_FACTOR = 16
cdef int _MAX_BISECT = 240


cdef inline double _res_pos(double z, double f, double p) nogil:
    return z * f * sin(z) - 2.0 * sin(p * z) * sin((1.0 - p) * z)


cdef inline double _res_neg_scaled(double z, double f, double p) nogil:
    # expm1 grouping stays accurate near z = 0 where the plain form cancels
    return (-(z * f + 1.0) * expm1(-2.0 * z)
            + expm1(-2.0 * p * z) + expm1(-2.0 * (1.0 - p) * z))


cdef inline double _node_tol(double z, double f) nogil:
    return 4e-15 * (4.0 + z + fabs(f) * z * z)


cdef double _refine(double a, double b, double ra, double rb,
                    double f, double p, double rel_tol) nogil:
    cdef double m, rm, z
    cdef int i
    for i in range(_MAX_BISECT):
        if (b - a) <= rel_tol * b:
            break
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        rm = _res_pos(m, f, p)
        if rm == 0.0:
            return m
        if (ra < 0.0) != (rm < 0.0):
            b = m
            rb = rm
        else:
            a = m
            ra = rm
    if rb != ra:
        z = b - rb * (b - a) / (rb - ra)
        if a <= z <= b:
            return z
    return 0.5 * (a + b)


cdef double _isolate(double a, double b, double f, double p, double rel_tol,
                     int level, bint node_right) except -1.0:
    cdef double z, pad, step, x0, x1, r0, r1
    cdef int samples, i, attempt
    if b <= a:
        z = b if node_right else a
        if fabs(_res_pos(z, f, p)) <= _node_tol(z, f):
            return z
        raise BracketError(level, f, p, a, b)
    z = b if node_right else a
    if z > 0.0 and fabs(_res_pos(z, f, p)) <= _node_tol(z, f):
        return z
    samples = _BASE_SAMPLES
    for attempt in range(2):
        pad = (b - a) * 1e-12
        step = (b - a - 2.0 * pad) / samples
        x0 = a + pad
        r0 = _res_pos(x0, f, p)
        if r0 == 0.0:
            return x0
        for i in range(samples):
            x1 = a + pad + (i + 1) * step
            r1 = _res_pos(x1, f, p)
            if r1 == 0.0:
                return x1
            if (r0 < 0.0) != (r1 < 0.0):
                return _refine(x0, x1, r0, r1, f, p, rel_tol)
            x0 = x1
            r0 = r1
        samples *= _REFINE_FACTOR
    raise BracketError(level, f, p, a, b)


def positive_levels(double f, double p, int n, double rel_tol):
    """First n positive roots (kL) of the oscillatory dispersion relation."""
    if not 0.0 < p < 1.0:
        raise ValueError("positive_levels requires 0 < p < 1")
    if f == 0.0 or not isfinite(f):
        raise ValueError("impurity strength must be finite and nonzero")
    if n < 1:
        raise ValueError("need at least one level")
    cdef double s = f - 2.0 * p * (1.0 - p)
    cdef bint shifted = f > 0.0 and s <= 0.0
    cdef double step_a = M_PI / p
    cdef double step_b = M_PI / (1.0 - p)
    ladder_arr = np.empty(n + 1)
    out_arr = np.empty(n)
    cdef double[::1] ladder = ladder_arr
    cdef double[::1] out = out_arr
    cdef long ia = 1, ib = 1
    cdef int i, m
    cdef double va, vb, a, b
    cdef bint node_right
    for i in range(n + 1):
        va = ia * step_a
        vb = ib * step_b
        if va <= vb:
            ladder[i] = va
            ia += 1
        else:
            ladder[i] = vb
            ib += 1
    for m in range(1, n + 1):
        if f < 0.0:
            a = m * M_PI
            b = ladder[m - 1]
            node_right = False
        elif shifted:
            a = ladder[m - 1]
            b = (m + 1) * M_PI
            node_right = True
        else:
            a = ladder[m - 2] if m >= 2 else 0.0
            b = m * M_PI
            node_right = True
        out[m - 1] = _isolate(a, b, f, p, rel_tol, m, node_right)
    if f > 0.0 and s == 0.0:
        out_arr = np.concatenate(([0.0], out_arr[:-1]))
    return out_arr


def bound_level(double f, double p, double rel_tol):
    """Root kappa*L of the hyperbolic dispersion relation, NaN if absent."""
    cdef double lo, hi, rlo, rhi, m, rm, z, cap
    cdef int i
    if f <= 0.0 or not 0.0 < p < 1.0 or not isfinite(f):
        return NAN
    if f - 2.0 * p * (1.0 - p) >= 0.0:
        return NAN
    lo = 1e-9
    rlo = _res_neg_scaled(lo, f, p)
    if rlo >= 0.0:
        hi = 1e-9
        rhi = rlo
        lo = 1e-300
        rlo = -1.0
    else:
        cap = 1.25 / f
        hi = lo
        while True:
            hi = min(hi * 2.0, cap)
            rhi = _res_neg_scaled(hi, f, p)
            if rhi > 0.0:
                break
            if hi >= cap:
                return NAN
            lo = hi
            rlo = rhi
    for i in range(_MAX_BISECT):
        if (hi - lo) <= rel_tol * hi:
            break
        m = 0.5 * (lo + hi)
        if m <= lo or m >= hi:
            break
        rm = _res_neg_scaled(m, f, p)
        if rm == 0.0:
            return m
        if (rlo < 0.0) != (rm < 0.0):
            hi = m
            rhi = rm
        else:
            lo = m
            rlo = rm
    if rhi != rlo:
        z = hi - rhi * (hi - lo) / (rhi - rlo)
        if lo <= z <= hi:
            return z
    return 0.5 * (lo + hi)


def boltzmann_weights(energies, double beta):
    """Shifted Boltzmann weights for an ascending energy array."""
    e_arr = np.ascontiguousarray(energies, dtype=np.float64)
    cdef const double[::1] e = e_arr
    cdef Py_ssize_t n = e.shape[0]
    w_arr = np.empty(n)
    cdef double[::1] w = w_arr
    cdef double e0 = e[0]
    cdef double z = 0.0, m1 = 0.0, d, wi
    cdef Py_ssize_t i
    for i in range(n):
        d = e[i] - e0
        wi = exp(-beta * d)
        w[i] = wi
        z += wi
        m1 += wi * d
    return w_arr, z, m1, w[n - 1] / z
