"""Exception hierarchy shared by every module of the package."""


class WittforgeError(ValueError):
    """Base class for all errors raised by wittforge."""


class RingParseError(WittforgeError):
    """A ring descriptor or element literal could not be parsed."""


class UnsupportedRingError(WittforgeError):
    """The requested operation has no constructive algorithm over this ring."""


class NotInvertibleError(WittforgeError):
    """An element or matrix that must be a unit is not one."""


class DimensionError(WittforgeError):
    """Matrix or vector sizes do not fit the operation."""


class NotAlternatingError(WittforgeError):
    """A matrix expected to be alternating has a nonzero diagonal or is not skew."""


class CertificateError(WittforgeError):
    """A supplied certificate does not satisfy its defining identity."""


class BudgetExceededError(WittforgeError):
    """An exhaustive enumeration would exceed the configured budget."""


class InvariantViolation(AssertionError):
    """A mathematical postcondition failed on concrete data."""
