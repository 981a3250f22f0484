"""Exception hierarchy."""


class ReciprocalChannelsError(ValueError):
    """Base class for all errors raised by this package."""


class DimensionError(ReciprocalChannelsError):
    """Operand shapes or declared dimensions do not match."""


class InvalidStateError(ReciprocalChannelsError):
    """Matrix is not a valid density matrix (or pure state)."""


class InvalidDistributionError(ReciprocalChannelsError):
    """Weights do not form a probability distribution."""


class CPViolationError(ReciprocalChannelsError):
    """A parameter lies outside the completely-positive range."""


class NotAChannelError(ReciprocalChannelsError):
    """Operation requires a completely positive, trace-preserving map."""


class UndefinedRatioError(ReciprocalChannelsError):
    """Asymmetry ratio is 0/0 or has a vanishing denominator."""
