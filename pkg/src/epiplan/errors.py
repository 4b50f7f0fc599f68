"""Exception types shared across the package."""


class EpiplanError(Exception):
    """Base class for all epiplan errors."""


class DomainError(EpiplanError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class FeasibilityError(EpiplanError, ValueError):
    """A policy violates the standing production-validity bound g(b)*xdot <= 1."""


class ConvergenceError(EpiplanError, RuntimeError):
    """An iterative routine exceeded its recursion or iteration budget."""


class ConfigError(EpiplanError, ValueError):
    """A run configuration file or value is invalid."""


class ClippedOverloadWarning(UserWarning):
    """The overload interval was clipped to [0, T]; closed-form welfare fell
    back to quadrature for this peak time."""
