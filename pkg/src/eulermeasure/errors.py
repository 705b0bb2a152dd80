"""Exception types shared across the package."""


class EulerMeasureError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(EulerMeasureError, ValueError):
    """Ambient dimensions of the operands do not match."""


class PartitionError(EulerMeasureError, ValueError):
    """Pieces of a piecewise-constant function do not partition the space."""


class PoleError(EulerMeasureError, ZeroDivisionError):
    """A rational function has no finite value at the requested point."""


class DivergenceError(EulerMeasureError, ArithmeticError):
    """A series has no rational generating function to regularize with."""


class MethodDisagreement(EulerMeasureError, AssertionError):
    """The fibering and cell-decomposition engines returned different values."""


class ParseError(EulerMeasureError, ValueError):
    """Syntax or semantic error in a set document."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
