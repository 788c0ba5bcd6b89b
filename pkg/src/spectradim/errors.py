"""Exception hierarchy shared across the package."""


class SpectradimError(Exception):
    """Base class for all package errors."""


class ParseError(SpectradimError):
    """Malformed graph input. Carries the offending line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnsupportedFormatError(ParseError):
    """Input is recognizable but not a supported variant (e.g. complex mtx)."""


class SolverError(SpectradimError):
    """Eigensolver failure. May carry partial results for diagnostics."""

    def __init__(self, message, partial_values=None):
        super().__init__(message)
        self.partial_values = partial_values


class InsufficientSpectrumError(SpectradimError):
    """Too few usable low-spectrum points for a slope fit."""


class NonMonotoneFitError(SpectradimError):
    """The log-log fit produced a negative slope; input is corrupt."""


class ContaminationError(SpectradimError):
    """Extra zero eigenvalues from disconnected components sit in the fit window."""


class UndefinedCorrelationError(SpectradimError):
    """Correlation is undefined (a series is constant)."""
