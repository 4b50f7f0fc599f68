"""Production, health, and total welfare of a peak-time policy.

Total welfare over the horizon [0, T] weighs production against health
with a weight ``lam``:

    W(b) = lam * int_0^T y(t|b) dt + (1 - lam) * int_0^T h(t|b) dt

where production is y = 1 - g(b)*xdot(t) and health drops below 1 only
while the infection rate exceeds the care capacity c.  Both integrals
have closed forms (``welfare_closed``); an adaptive-Simpson quadrature of
the welfare density (``welfare_quadrature``) serves as an independent
cross-check and as the fallback when the overload interval pokes outside
[0, T], where the closed form does not apply.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Optional

from ._backend import kernels
from .capacity import b_star, overload_interval
from .dynamics import Epidemic, a_from_b, x_at, xdot_at
from .errors import ClippedOverloadWarning, DomainError, FeasibilityError

__all__ = ["GFunction", "WelfarePolicy", "FeasibilityReport",
           "production_at", "health_at", "welfare_density",
           "welfare_closed", "welfare_quadrature", "check_feasibility"]

_G_KINDS = ("constant", "affine")


@dataclass(frozen=True)
class GFunction:
    """Lockdown-length cost g(b), nondecreasing with g >= 1.

    ``constant`` evaluates to g0; ``affine`` to g0 + g1*b/t_ref with a
    stored reference scale (conventionally the horizon T).
    """

    kind: str
    g0: float
    g1: float = 0.0
    t_ref: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in _G_KINDS:
            raise DomainError(f"g kind must be one of {_G_KINDS}, got {self.kind!r}")
        if not self.g0 >= 1.0:
            raise DomainError(f"g0 must be >= 1, got {self.g0!r}")
        if not self.g1 >= 0.0:
            raise DomainError(f"g1 must be >= 0, got {self.g1!r}")
        if not self.t_ref > 0.0:
            raise DomainError(f"t_ref must be positive, got {self.t_ref!r}")

    @classmethod
    def constant(cls, g0: float) -> "GFunction":
        return cls(kind="constant", g0=g0)

    @classmethod
    def affine(cls, g0: float, g1: float, t_ref: float) -> "GFunction":
        return cls(kind="affine", g0=g0, g1=g1, t_ref=t_ref)

    def value(self, b: float) -> float:
        if self.kind == "constant":
            return self.g0
        return self.g0 + self.g1 * b / self.t_ref

    def slope(self, b: float) -> float:
        if self.kind == "constant":
            return 0.0
        return self.g1 / self.t_ref

    __call__ = value


@dataclass(frozen=True)
class WelfarePolicy:
    """A planner's problem instance.

    Attributes:
        x0:   initially infected share, in (0, 1/2).
        lam:  welfare weight on production, in [0, 1].
        c:    health-care capacity share, in (0, 1].
        T:    planning horizon, > 0.
        b_lb: earliest feasible peak time, 0 < b_lb <= T.
        g:    lockdown-length cost function.
    """

    x0: float
    lam: float
    c: float
    T: float
    b_lb: float
    g: GFunction

    def __post_init__(self) -> None:
        if not 0.0 < self.x0 < 0.5:
            raise DomainError(f"x0 must lie in (0, 1/2), got {self.x0!r}")
        if not 0.0 <= self.lam <= 1.0:
            raise DomainError(f"lambda must lie in [0, 1], got {self.lam!r}")
        if not 0.0 < self.c <= 1.0:
            raise DomainError(f"capacity c must lie in (0, 1], got {self.c!r}")
        if not self.T > 0.0:
            raise DomainError(f"horizon T must be positive, got {self.T!r}")
        if not 0.0 < self.b_lb <= self.T:
            raise DomainError(
                f"b_lb must lie in (0, T] = (0, {self.T!r}], got {self.b_lb!r}")

    def epidemic(self, b: float) -> Epidemic:
        """The infection wave whose peak the planner sets at ``b``."""
        return Epidemic.from_peak(b, self.x0)


@dataclass(frozen=True)
class FeasibilityReport:
    """Worst case of the production-validity bound g(b)*a(b)/4 <= 1."""

    feasible: bool
    worst_margin: float
    worst_b: float

    def __str__(self) -> str:
        state = "feasible" if self.feasible else "infeasible"
        return (f"{state}: worst margin {self.worst_margin:.6f} "
                f"at b = {self.worst_b:.6f}")


def production_at(t: float, b: float, policy: WelfarePolicy) -> float:
    """Output level y = 1 - g(b)*xdot(t); reverse hump-shaped in t.

    Raises FeasibilityError when the load g(b)*xdot(t) exceeds 1, which
    violates the standing assumption that output stays nonnegative.
    """
    load = policy.g.value(b) * xdot_at(t, policy.epidemic(b))
    if load > 1.0:
        raise FeasibilityError(
            f"g(b)*xdot(t) = {load!r} > 1 at t={t!r}, b={b!r}")
    return 1.0 - load


def health_at(t: float, b: float, policy: WelfarePolicy) -> float:
    """Health level: 1 within capacity, 1 - (xdot(t) - c) during overload.

    The overload branch applies exactly where xdot(t) > c, i.e. strictly
    inside [t_l, t_r], so the function is continuous with value 1 at the
    interval ends.  Values may go negative when xdot - c > 1; they are
    reported as-is.
    """
    xd = xdot_at(t, policy.epidemic(b))
    if xd > policy.c:
        return 1.0 - (xd - policy.c)
    return 1.0


def welfare_density(t: float, b: float, policy: WelfarePolicy) -> float:
    """Instantaneous welfare lam*y + (1-lam)*h; continuous on [0, T]."""
    epi = policy.epidemic(b)
    return kernels.welfare_density(t, epi.a, epi.b, policy.g.value(b),
                                   policy.lam, policy.c)


def _check_b_range(b: float, policy: WelfarePolicy) -> None:
    if not policy.b_lb <= b <= policy.T:
        raise DomainError(
            f"b outside [b_lb, T] = [{policy.b_lb!r}, {policy.T!r}]: {b!r}")


def welfare_closed(b: float, policy: WelfarePolicy) -> float:
    """Total welfare W(b) in closed form.

    For b >= b_star the capacity is never strictly exceeded and

        W(b) = T - lam*g(b)*(x(T) - x(0)).

    Below b_star the health deficit subtracts the overload area:

        W(b) = T - lam*g(b)*(x(T) - x(0))
                 + (1-lam)*(c*(t_r - t_l) - (x(t_r) - x(t_l))).

    When the overload interval is clipped by [0, T] the closed form does
    not apply; the value is then computed by quadrature and a
    ClippedOverloadWarning is emitted.
    """
    _check_b_range(b, policy)
    epi = policy.epidemic(b)
    g_b = policy.g.value(b)
    base = policy.T - policy.lam * g_b * (x_at(policy.T, epi) - x_at(0.0, epi))
    if b >= b_star(policy.c, policy.x0):
        return base
    iv = overload_interval(b, policy.c, policy.x0, policy.T)
    assert iv is not None  # b < b_star
    if iv.clipped:
        warnings.warn(
            f"overload interval clipped to [0, T] at b={b!r}; "
            "using quadrature for the welfare value",
            ClippedOverloadWarning, stacklevel=2)
        return welfare_quadrature(b, policy)
    deficit = policy.c * (iv.t_r - iv.t_l) - (x_at(iv.t_r, epi) - x_at(iv.t_l, epi))
    return base + (1.0 - policy.lam) * deficit


def welfare_quadrature(b: float, policy: WelfarePolicy, tol: float = 1e-9,
                       max_depth: int = 60) -> float:
    """Total welfare by adaptive Simpson integration of the density.

    The integration domain [0, T] is split at the overload endpoints,
    where the health branch kinks, so every panel is smooth; the absolute
    error is at most ``tol``.  Raises ConvergenceError if any panel fails
    to converge within ``max_depth`` bisections.
    """
    if not b > 0.0:
        raise DomainError(f"peak time b must be positive, got {b!r}")
    if not tol > 0.0:
        raise DomainError(f"tolerance must be positive, got {tol!r}")
    epi = policy.epidemic(b)
    iv = overload_interval(b, policy.c, policy.x0, policy.T)
    if iv is None or iv.degenerate:
        split_lo = split_hi = math.nan
    else:
        split_lo, split_hi = iv.t_l, iv.t_r
    return kernels.welfare_integral(epi.a, epi.b, policy.g.value(b),
                                    policy.lam, policy.c, policy.T,
                                    split_lo, split_hi, tol, max_depth)


def check_feasibility(policy: WelfarePolicy, n: int = 1001) -> FeasibilityReport:
    """Verify g(b)*a(b)/4 <= 1 on a dense grid of b in [b_lb, T].

    The wave's density is maximal at its peak with height a/4, so a
    single check per b bounds g(b)*xdot(t) over all t.  Returns the worst
    margin and where it occurs; margins above 1 mark infeasibility.
    """
    lo, hi = policy.b_lb, policy.T
    worst_margin = -math.inf
    worst_b = lo
    if hi == lo:
        n = 1
    for i in range(n):
        b = lo if n == 1 else lo + (hi - lo) * i / (n - 1)
        margin = policy.g.value(b) * a_from_b(b, policy.x0) / 4.0
        if margin > worst_margin:
            worst_margin = margin
            worst_b = b
    return FeasibilityReport(feasible=worst_margin <= 1.0,
                             worst_margin=worst_margin, worst_b=worst_b)
