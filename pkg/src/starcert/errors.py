"""Exception types raised across the toolkit."""


class StarcertError(Exception):
    """Base class for all toolkit errors."""


class DomainError(StarcertError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class ZeroEncounteredError(StarcertError, ArithmeticError):
    """A denominator fell below the zero tolerance."""


class SingularObjectiveError(StarcertError, ArithmeticError):
    """An objective returned a non-finite value on the sampling grid."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class PreconditionError(StarcertError, ValueError):
    """A theorem or operation was invoked outside its stated preconditions."""


class TouchNotIsolatedError(StarcertError, RuntimeError):
    """The boundary-touch search could not bracket a sign change."""


class WitnessRejectedError(StarcertError, RuntimeError):
    """A located touch maps to the excluded boundary point of the target."""


class ConfigError(StarcertError, ValueError):
    """Malformed run configuration; ``key`` names the offending entry."""

    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key
