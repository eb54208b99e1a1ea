"""Exception types shared across the package."""


class GaussKeyError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GaussKeyError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InvalidStateError(GaussKeyError, ValueError):
    """A matrix is not a valid Gaussian-state covariance matrix."""


class NumericError(GaussKeyError, ArithmeticError):
    """A numerical guard tripped beyond the tolerated float noise."""


class UnsupportedChannelError(GaussKeyError, ValueError):
    """The requested channel class is outside the supported set."""


class DegenerateMeasurementError(GaussKeyError, ValueError):
    """A homodyne measurement would condition on a zero-variance quadrature."""


class EmptyStatisticsError(GaussKeyError, RuntimeError):
    """A simulation kept too few rounds to form moment estimates."""
