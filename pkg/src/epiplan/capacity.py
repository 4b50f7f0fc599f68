"""Health-care overload geometry.

The infection-rate density exceeds a capacity ``c`` exactly on a time
interval symmetric about the wave's peak.  This module computes the
critical peak time ``b_star`` (where the wave's height equals capacity)
and the overload interval ``[t_l, t_r]`` where ``xdot(t) >= c``, clipped
to the planning horizon [0, T] with flags.
"""

import math
from dataclasses import dataclass
from typing import Optional

from .dynamics import a_from_b, b_from_a
from .errors import DomainError

__all__ = ["OverloadInterval", "b_star", "overload_interval"]


@dataclass(frozen=True)
class OverloadInterval:
    """Times where the infection rate (weakly) exceeds capacity.

    ``clipped_left``/``clipped_right`` record that the raw root fell
    outside [0, T] and the endpoint was clamped to the horizon.
    """

    t_l: float
    t_r: float
    clipped_left: bool = False
    clipped_right: bool = False

    def __post_init__(self) -> None:
        if self.t_l > self.t_r:
            raise DomainError(
                f"overload interval endpoints out of order: {self.t_l!r} > {self.t_r!r}")

    @property
    def clipped(self) -> bool:
        return self.clipped_left or self.clipped_right

    @property
    def degenerate(self) -> bool:
        return self.t_l == self.t_r

    @property
    def width(self) -> float:
        return self.t_r - self.t_l


def b_star(c: float, x0: float) -> float:
    """Critical peak time: the smallest b whose wave height a/4 equals c.

    Equals b_from_a(4c, x0); for peaks at or after b_star the capacity is
    never strictly exceeded.
    """
    if not c > 0.0:
        raise DomainError(f"capacity c must be positive, got {c!r}")
    return b_from_a(4.0 * c, x0)


def overload_interval(b: float, c: float, x0: float,
                      T: float) -> Optional[OverloadInterval]:
    """Interval of times in [0, T] where xdot(t) >= c, for a wave peaking at b.

    Returns None when the wave's height stays strictly below capacity
    (b > b_star), the degenerate point [b, b] when the height exactly
    equals capacity (b == b_star), and otherwise the two roots of
    xdot(t) = c clipped to [0, T].
    """
    if not b > 0.0:
        raise DomainError(f"peak time b must be positive, got {b!r}")
    if not T > 0.0:
        raise DomainError(f"horizon T must be positive, got {T!r}")
    bs = b_star(c, x0)  # validates c and x0
    if b > bs:
        return None
    if b == bs:
        return _clip(b, b, T)

    a = a_from_b(b, x0)
    # Roots of a*x*(1-x) = c in log-odds form.  With r = (a - 2c)/(2c) > 1
    # the two roots are b +- ln(r + sqrt(r^2 - 1))/a; using the '+' branch
    # for both keeps them exactly symmetric about b and avoids the
    # cancellation of r - sqrt(r^2 - 1) for large r.
    r = (a - 2.0 * c) / (2.0 * c)
    s2 = r * r - 1.0
    if s2 < 0.0:  # b < bs guarantees r > 1; guard rounding at the boundary
        s2 = 0.0
    half_width = math.log(r + math.sqrt(s2)) / a
    return _clip(b - half_width, b + half_width, T)


def _clip(t_l_raw: float, t_r_raw: float, T: float) -> OverloadInterval:
    t_l = min(max(t_l_raw, 0.0), T)
    t_r = min(max(t_r_raw, 0.0), T)
    return OverloadInterval(
        t_l=t_l,
        t_r=t_r,
        clipped_left=not 0.0 <= t_l_raw <= T,
        clipped_right=not 0.0 <= t_r_raw <= T,
    )
