# cython: language_level=3, boundscheck=False, cdivision=True
"""Compiled numeric kernels.

Mirror of ``_kernels_py`` with identical algorithms and operation order;
see that module for the full contract.  Keep the two implementations in
lockstep: the test suite asserts they agree pointwise.
"""

from libc.math cimport exp, fabs, isnan

from epiplan.errors import ConvergenceError

__all__ = ["logistic_x", "logistic_xdot", "welfare_density", "welfare_integral"]


cdef inline double _x(double t, double a, double b) nogil:
    cdef double z = a * (t - b)
    cdef double ez
    if z >= 0.0:
        return 1.0 / (1.0 + exp(-z))
    ez = exp(z)
    return ez / (1.0 + ez)


cdef inline double _xdot(double t, double a, double b) nogil:
    cdef double x = _x(t, a, b)
    return a * x * (1.0 - x)


cdef inline double _density(double t, double a, double b, double g_b,
                            double lam, double c) nogil:
    cdef double xd = _xdot(t, a, b)
    cdef double h
    if xd > c:
        h = 1.0 - (xd - c)
    else:
        h = 1.0
    return lam * (1.0 - g_b * xd) + (1.0 - lam) * h


cdef inline double _simpson(double lo, double hi, double flo, double fmid,
                            double fhi) nogil:
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)


cdef double _adapt(double a, double b, double g_b, double lam, double c,
                   double t0, double t2, double f0, double f1, double f2,
                   double whole, double tol, int depth,
                   int max_depth) except? -1.0e308:
    cdef double m = 0.5 * (t0 + t2)
    cdef double lm = 0.5 * (t0 + m)
    cdef double rm = 0.5 * (m + t2)
    cdef double flm = _density(lm, a, b, g_b, lam, c)
    cdef double frm = _density(rm, a, b, g_b, lam, c)
    cdef double s_left = _simpson(t0, m, f0, flm, f1)
    cdef double s_right = _simpson(m, t2, f1, frm, f2)
    cdef double s2 = s_left + s_right
    cdef double err = s2 - whole
    cdef double half
    if fabs(err) <= 15.0 * tol:
        return s2 + err / 15.0
    if depth >= max_depth:
        raise ConvergenceError(
            "adaptive Simpson recursion exceeded depth %d on [%g, %g]"
            % (max_depth, t0, t2))
    half = 0.5 * tol
    return (_adapt(a, b, g_b, lam, c, t0, m, f0, flm, f1, s_left,
                   half, depth + 1, max_depth)
            + _adapt(a, b, g_b, lam, c, m, t2, f1, frm, f2, s_right,
                     half, depth + 1, max_depth))


def logistic_x(double t, double a, double b):
    """Cumulative infected share x(t) = 1 / (1 + exp(a*(b - t)))."""
    return _x(t, a, b)


def logistic_xdot(double t, double a, double b):
    """Infection-rate density xdot(t) = a * x(t) * (1 - x(t))."""
    return _xdot(t, a, b)


def welfare_density(double t, double a, double b, double g_b, double lam,
                    double c):
    """Instantaneous welfare lam*y(t) + (1-lam)*h(t)."""
    return _density(t, a, b, g_b, lam, c)


def welfare_integral(double a, double b, double g_b, double lam, double c,
                     double t_end, double split_lo, double split_hi,
                     double tol, int max_depth):
    """Adaptive-Simpson integral of the welfare density over [0, t_end].

    Panels are split at the overload endpoints ``split_lo``/``split_hi``
    (NaN when absent) and the absolute tolerance is apportioned by width.
    """
    cdef double pts[4]
    cdef int npts = 0
    cdef int i
    cdef double t0, t2, m, f0, f1, f2, whole, panel_tol
    cdef double total = 0.0

    pts[npts] = 0.0
    npts += 1
    if not isnan(split_lo) and 0.0 < split_lo < t_end:
        pts[npts] = split_lo
        npts += 1
    if not isnan(split_hi) and 0.0 < split_hi < t_end and split_hi > pts[npts - 1]:
        pts[npts] = split_hi
        npts += 1
    pts[npts] = t_end
    npts += 1

    for i in range(npts - 1):
        t0 = pts[i]
        t2 = pts[i + 1]
        if t2 <= t0:
            continue
        m = 0.5 * (t0 + t2)
        f0 = _density(t0, a, b, g_b, lam, c)
        f1 = _density(m, a, b, g_b, lam, c)
        f2 = _density(t2, a, b, g_b, lam, c)
        whole = _simpson(t0, t2, f0, f1, f2)
        panel_tol = tol * (t2 - t0) / t_end
        total += _adapt(a, b, g_b, lam, c, t0, t2, f0, f1, f2, whole,
                        panel_tol, 0, max_depth)
    return total
