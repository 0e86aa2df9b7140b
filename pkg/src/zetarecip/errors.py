"""Exception types raised by the numerical routines."""


class ZetaRecipError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ZetaRecipError, ValueError):
    """Argument outside the supported domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class AccuracyError(ZetaRecipError, ArithmeticError):
    """A requested accuracy could not be reached within the configured caps.

    ``achieved`` carries the best error estimate obtained before giving up.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class PrecisionError(ZetaRecipError, ArithmeticError):
    """Cancellation would destroy all significant digits in double precision."""


class DivergenceError(ZetaRecipError, ArithmeticError):
    """An iterative procedure detected non-convergent input."""


class DegenerateError(ZetaRecipError, ValueError):
    """Input data carries no information (e.g. all samples zero)."""


class ZerosFileError(ZetaRecipError, ValueError):
    """Malformed zeros file; ``lineno`` is 1-based when known."""

    def __init__(self, message, lineno=None):
        super().__init__(message)
        self.lineno = lineno


class ZerosValidationError(ZerosFileError):
    """Ordinates in a zeros file failed a consistency check."""
