"""Closed-form SI infection dynamics and an independent ODE oracle.

The infection wave follows the logistic law ``xdot = a*x*(1-x)`` with
initial share ``x0``, whose solution is ``x(t) = 1/(1 + exp(a*(b-t)))``
with the peak time ``b = ln(1/x0 - 1)/a``.  All exponentials are taken in
this shifted form, which is the canonical evaluation throughout the
package: it never overflows and keeps x in [0, 1].

``integrate_ode`` is a deliberately independent fixed-step RK4 integrator
of the differential form, used as a cross-check of the closed form.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import DomainError

__all__ = ["Epidemic", "b_from_a", "a_from_b", "x_at", "xdot_at",
           "integrate_ode", "log_odds"]


def _check_x0(x0: float) -> None:
    if not 0.0 < x0 < 0.5:
        raise DomainError(f"x0 must lie in (0, 1/2), got {x0!r}")


def log_odds(x0: float) -> float:
    """ln(1/x0 - 1) for x0 in (0, 1/2).

    Written as log1p((1 - 2*x0)/x0) so the result stays accurate as
    x0 approaches 1/2, where the direct form cancels.
    """
    _check_x0(x0)
    return math.log1p((1.0 - 2.0 * x0) / x0)


def b_from_a(a: float, x0: float) -> float:
    """Peak time of the infection wave for spread intensity ``a``."""
    if not a > 0.0:
        raise DomainError(f"intensity a must be positive, got {a!r}")
    return log_odds(x0) / a


def a_from_b(b: float, x0: float) -> float:
    """Spread intensity that puts the wave's peak at time ``b``."""
    if not b > 0.0:
        raise DomainError(f"peak time b must be positive, got {b!r}")
    return log_odds(x0) / b


@dataclass(frozen=True)
class Epidemic:
    """An SI infection wave, fully determined by (x0, a) or (x0, b).

    Attributes:
        x0: initially infected share, in (0, 1/2).
        a:  spread intensity per unit time, a > 0.
        b:  peak time of the infection-rate density (cached; tied to a
            by a*b = ln(1/x0 - 1)).
    """

    x0: float
    a: float
    b: float

    def __post_init__(self) -> None:
        _check_x0(self.x0)
        if not self.a > 0.0:
            raise DomainError(f"intensity a must be positive, got {self.a!r}")
        if not self.b > 0.0:
            raise DomainError(f"peak time b must be positive, got {self.b!r}")
        target = log_odds(self.x0)
        if abs(self.a * self.b - target) > 1e-9 * max(1.0, target):
            raise DomainError(
                f"inconsistent epidemic: a*b = {self.a * self.b!r} but "
                f"ln(1/x0 - 1) = {target!r}")

    @classmethod
    def from_intensity(cls, a: float, x0: float) -> "Epidemic":
        return cls(x0=x0, a=a, b=b_from_a(a, x0))

    @classmethod
    def from_peak(cls, b: float, x0: float) -> "Epidemic":
        return cls(x0=x0, a=a_from_b(b, x0), b=b)


def x_at(t: float, epi: Epidemic) -> float:
    """Cumulative infected share at time ``t``, strictly increasing in t."""
    return kernels.logistic_x(t, epi.a, epi.b)


def xdot_at(t: float, epi: Epidemic) -> float:
    """Infection-rate density a*x*(1-x); hump-shaped with its peak a/4 at t=b."""
    return kernels.logistic_xdot(t, epi.a, epi.b)


def integrate_ode(x0: float, a: float, t_end: float,
                  dt: float) -> tuple[np.ndarray, np.ndarray]:
    """Integrate ``xdot = a*x*(1-x)`` from x(0)=x0 with classical RK4.

    Returns (t, x) sample arrays on the fixed grid 0, dt, 2*dt, ...,
    finishing exactly at ``t_end`` (the last step is shortened if needed).
    Fixed-step RK4 keeps the oracle simple and deterministic; each sample
    is within O(dt^4) of the closed form.
    """
    if not 0.0 < x0 < 1.0:
        raise DomainError(f"x0 must lie in (0, 1), got {x0!r}")
    if not t_end > 0.0:
        raise DomainError(f"t_end must be positive, got {t_end!r}")
    if not dt > 0.0:
        raise DomainError(f"dt must be positive, got {dt!r}")
    if dt >= t_end:
        raise DomainError(f"step dt={dt!r} must be smaller than t_end={t_end!r}")

    n_steps = int(math.ceil(t_end / dt - 1e-12))
    ts = np.empty(n_steps + 1)
    xs = np.empty(n_steps + 1)
    ts[0] = 0.0
    xs[0] = x0

    x = x0
    t_prev = 0.0
    for k in range(n_steps):
        t_next = t_end if k == n_steps - 1 else (k + 1) * dt
        h = t_next - t_prev
        k1 = a * x * (1.0 - x)
        x2 = x + 0.5 * h * k1
        k2 = a * x2 * (1.0 - x2)
        x3 = x + 0.5 * h * k2
        k3 = a * x3 * (1.0 - x3)
        x4 = x + h * k3
        k4 = a * x4 * (1.0 - x4)
        x = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        ts[k + 1] = t_next
        xs[k + 1] = x
        t_prev = t_next
    return ts, xs
