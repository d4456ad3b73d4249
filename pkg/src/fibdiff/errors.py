"""Exception hierarchy shared by all fibdiff modules."""


class FibDiffError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FibDiffError, ValueError):
    """An enclosure violates an operation's domain (divisor straddles 0, log of a non-positive value)."""


class PrecisionError(FibDiffError):
    """The enclosure is too wide for the requested operation; refine and retry."""


class UndecidableError(FibDiffError):
    """Two quantities could not be separated up to the precision ceiling."""


class PrecisionCeilingError(PrecisionError):
    """Certification failed even at the maximum working precision."""


class RangeError(FibDiffError, ValueError):
    """An index lies outside the supported range."""


class ParityError(FibDiffError, ValueError):
    """Indices of a Fibonacci difference have different parity."""


class UnsupportedError(FibDiffError, ValueError):
    """The requested computation is not available for this input."""


class InstanceError(FibDiffError, ValueError):
    """A linear-form instance violates a side condition of the lower bound."""


class ConvergenceError(FibDiffError):
    """A bracketing search could not separate within the precision ceiling."""


class DegenerateError(FibDiffError):
    """A reduction problem has no certifiably positive epsilon.

    ``diagnosis`` holds a human-readable explanation and ``attempts`` the
    per-convergent records that were tried.
    """

    def __init__(self, message, diagnosis="", attempts=()):
        super().__init__(message)
        self.diagnosis = diagnosis
        self.attempts = list(attempts)


class RegimeError(FibDiffError, ValueError):
    """Parameters lie outside the regime where an analytic estimate holds."""


class UnsupportedShiftError(FibDiffError, ValueError):
    """The residual case analysis does not cover this shift."""


class StageError(FibDiffError):
    """A proof stage could not certify its claim."""

    def __init__(self, stage, message):
        super().__init__(f"stage {stage!r} failed: {message}")
        self.stage = stage
        self.message = message
