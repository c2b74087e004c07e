"""
Exception Hierarchy

All errors raised by the package derive from FractalBrainError. Each concrete
error also derives from ValueError so callers that only expect the built-in
exception keep working.
"""

from typing import Optional


class FractalBrainError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FractalBrainError, ValueError):
    """An argument lies outside the domain of the operation."""


class ConfigurationError(FractalBrainError, ValueError):
    """A configuration value is missing, unknown, inconsistent or infeasible."""


class DegenerateInputError(FractalBrainError, ValueError):
    """The input carries no scale to measure (for example a constant series)."""


class SignalFormatError(FractalBrainError, ValueError):
    """A signal file is structurally invalid (header, spacing, length)."""


class SignalParseError(SignalFormatError):
    """
    A row of a signal file could not be parsed.

    Attributes:
        line (Optional[int]): 1-based line number of the offending row
    """

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
