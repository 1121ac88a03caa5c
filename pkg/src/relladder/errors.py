"""Exception types raised across the package."""


class RelLadderError(Exception):
    """Base class for all package errors."""


class NoRecurrence(RelLadderError):
    """No linear recurrence of the requested order fits the sequence."""


class PresetViolation(RelLadderError):
    """A cell does not satisfy the constraints of the requested preset."""


class TooLarge(RelLadderError):
    """The instance exceeds the size an oracle is willing to handle."""


class DegenerateSpectrum(RelLadderError):
    """Two eigenvalues coincide (within tolerance); amplitudes are undefined."""


class SingularAmplitude(RelLadderError):
    """A closed-form amplitude has a vanishing denominator."""


class ZeroAvailability(RelLadderError):
    """Availability is zero, so the failure rate is undefined."""

    def __init__(self, message, nu=None):
        super().__init__(message)
        self.nu = nu


class NoConvergence(RelLadderError):
    """The root finder did not reach its residual target."""


class NoSegment(RelLadderError):
    """No accumulation segment exists on the positive real axis."""


class NotBracketed(RelLadderError):
    """A bisection predicate does not change over the search interval."""
