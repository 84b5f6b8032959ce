"""Exception types shared across the package."""


class BfaError(Exception):
    """Base class for every error raised by bfa."""


class ShapeError(BfaError, ValueError):
    """Input has the wrong length or variable count."""


class DomainError(BfaError, ValueError):
    """Input is well formed but outside the domain of the operation."""


class FieldError(BfaError, ValueError):
    """Invalid field presentation (reducible modulus, mixed fields, ...)."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class ParseError(BfaError, ValueError):
    """Text input could not be parsed; ``pos`` is the 0-based offending column."""

    def __init__(self, message, text="", pos=0):
        super().__init__(message)
        self.text = text
        self.pos = pos

    def caret(self):
        return f"{self.text}\n{' ' * self.pos}^"


class InvariantViolation(BfaError, AssertionError):
    """A guaranteed postcondition did not hold."""


class OracleScaleError(BfaError, ValueError):
    """Brute-force oracle refused an input that is too large."""
