"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so library code should raise
the most specific class that applies.
"""


class CharpHeightsError(Exception):
    """Base class for all errors raised by this package."""


class ExpressionError(CharpHeightsError):
    """Malformed input text (expressions, curve files, point files)."""

    def __init__(self, message, position=None):
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)
        self.position = position


class DomainError(CharpHeightsError):
    """A mathematical precondition fails: supersingular curve, model not
    integral or not certified minimal, point outside the required subgroup."""


class PrecisionError(CharpHeightsError):
    """A result cannot be produced, or a predicate cannot be decided, at the
    precision that was requested or reached."""


class NormalizationFault(CharpHeightsError):
    """An internal runtime check failed.  This signals an implementation
    fault, never a user error."""
