"""Pure-Python numeric kernels.

This module is the fallback twin of the compiled extension ``_kernels``;
both expose the same four functions with identical semantics and the same
operation order, so results agree to the last few ulps.  The compiled
module is preferred at import time (see ``_backend``); set
``EPIPLAN_PURE_PYTHON=1`` to force this implementation.

Kernel conventions
------------------
* ``a``      spread intensity, ``a > 0``
* ``b``      peak time of the infection wave
* ``g_b``    lockdown-length cost g(b), evaluated by the caller
* ``lam``    welfare weight on production
* ``c``      health-care capacity share
* All exponentials are evaluated in the shifted form ``exp(a*(t - b))``
  through a saturating sigmoid, so nothing overflows for ``|a*t|`` up to
  1000 and beyond.
"""

import math

from .errors import ConvergenceError

__all__ = ["logistic_x", "logistic_xdot", "welfare_density", "welfare_integral"]


def logistic_x(t: float, a: float, b: float) -> float:
    """Cumulative infected share x(t) = 1 / (1 + exp(a*(b - t)))."""
    z = a * (t - b)
    if z >= 0.0:
        # exp(-z) underflows to 0 for large z; the result saturates at 1.
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)


def logistic_xdot(t: float, a: float, b: float) -> float:
    """Infection-rate density xdot(t) = a * x(t) * (1 - x(t))."""
    x = logistic_x(t, a, b)
    return a * x * (1.0 - x)


def welfare_density(t: float, a: float, b: float, g_b: float,
                    lam: float, c: float) -> float:
    """Instantaneous welfare lam*y(t) + (1-lam)*h(t).

    Production is y = 1 - g_b*xdot; health is 1 while the infection rate
    stays within capacity and 1 - (xdot - c) above it, which keeps the
    density continuous across the overload boundary.
    """
    xd = logistic_xdot(t, a, b)
    if xd > c:
        h = 1.0 - (xd - c)
    else:
        h = 1.0
    return lam * (1.0 - g_b * xd) + (1.0 - lam) * h


def _simpson(lo: float, hi: float, flo: float, fmid: float, fhi: float) -> float:
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)


def _adapt(a: float, b: float, g_b: float, lam: float, c: float,
           t0: float, t2: float, f0: float, f1: float, f2: float,
           whole: float, tol: float, depth: int, max_depth: int) -> float:
    """Recursive adaptive Simpson step with Richardson correction."""
    m = 0.5 * (t0 + t2)
    lm = 0.5 * (t0 + m)
    rm = 0.5 * (m + t2)
    flm = welfare_density(lm, a, b, g_b, lam, c)
    frm = welfare_density(rm, a, b, g_b, lam, c)
    s_left = _simpson(t0, m, f0, flm, f1)
    s_right = _simpson(m, t2, f1, frm, f2)
    s2 = s_left + s_right
    err = s2 - whole
    if abs(err) <= 15.0 * tol:
        return s2 + err / 15.0
    if depth >= max_depth:
        raise ConvergenceError(
            f"adaptive Simpson recursion exceeded depth {max_depth} "
            f"on [{t0:g}, {t2:g}]")
    half = 0.5 * tol
    return (_adapt(a, b, g_b, lam, c, t0, m, f0, flm, f1, s_left,
                   half, depth + 1, max_depth)
            + _adapt(a, b, g_b, lam, c, m, t2, f1, frm, f2, s_right,
                     half, depth + 1, max_depth))


def welfare_integral(a: float, b: float, g_b: float, lam: float, c: float,
                     t_end: float, split_lo: float, split_hi: float,
                     tol: float, max_depth: int) -> float:
    """Integral of the welfare density over [0, t_end].

    ``split_lo`` and ``split_hi`` are the overload-interval endpoints where
    the health branch kinks; panels are split there so each panel is smooth.
    Pass NaN (or values outside the open interval) when a split is absent.
    The absolute tolerance is apportioned to panels by width.
    """
    pts = [0.0]
    if split_lo == split_lo and 0.0 < split_lo < t_end:  # NaN-safe
        pts.append(split_lo)
    if split_hi == split_hi and 0.0 < split_hi < t_end and split_hi > pts[-1]:
        pts.append(split_hi)
    pts.append(t_end)

    total = 0.0
    for i in range(len(pts) - 1):
        t0 = pts[i]
        t2 = pts[i + 1]
        if t2 <= t0:
            continue
        m = 0.5 * (t0 + t2)
        f0 = welfare_density(t0, a, b, g_b, lam, c)
        f1 = welfare_density(m, a, b, g_b, lam, c)
        f2 = welfare_density(t2, a, b, g_b, lam, c)
        whole = _simpson(t0, t2, f0, f1, f2)
        panel_tol = tol * (t2 - t0) / t_end
        total += _adapt(a, b, g_b, lam, c, t0, t2, f0, f1, f2, whole,
                        panel_tol, 0, max_depth)
    return total
