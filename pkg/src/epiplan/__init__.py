"""SI infection waves, care-capacity overload, and peak-time welfare planning.

The package models a single infection wave whose spread intensity a (or
equivalently its peak time b) is the planner's lever, weighs production
against health over a horizon [0, T], and maximizes total welfare over
the feasible peak times.  Hot numeric kernels run through a compiled
extension when available (``BACKEND`` reports which implementation is
active; see ``epiplan._backend``).
"""

from ._backend import BACKEND
from .capacity import OverloadInterval, b_star, overload_interval
from .dynamics import (Epidemic, a_from_b, b_from_a, integrate_ode, x_at,
                       xdot_at)
from .errors import (ClippedOverloadWarning, ConfigError, ConvergenceError,
                     DomainError, EpiplanError, FeasibilityError)
from .optimizer import (OptimizationResult, PropertyCheck,
                        VerificationReport, maximize_welfare, sweep,
                        verify_propositions)
from .welfare import (FeasibilityReport, GFunction, WelfarePolicy,
                      check_feasibility, health_at, production_at,
                      welfare_closed, welfare_density, welfare_quadrature)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ClippedOverloadWarning",
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "Epidemic",
    "EpiplanError",
    "FeasibilityError",
    "FeasibilityReport",
    "GFunction",
    "OptimizationResult",
    "OverloadInterval",
    "PropertyCheck",
    "VerificationReport",
    "WelfarePolicy",
    "a_from_b",
    "b_from_a",
    "b_star",
    "check_feasibility",
    "health_at",
    "integrate_ode",
    "maximize_welfare",
    "overload_interval",
    "production_at",
    "sweep",
    "verify_propositions",
    "welfare_closed",
    "welfare_density",
    "welfare_quadrature",
    "x_at",
    "xdot_at",
]
