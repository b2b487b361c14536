"""Exception hierarchy shared by every module in the package."""


class MinCodesError(Exception):
    """Base class for all errors raised by mincodes."""


class InvalidModulus(MinCodesError, ValueError):
    pass


class NotInvertible(MinCodesError, ValueError):
    pass


class ShapeMismatch(MinCodesError, ValueError):
    """Operation needs a ring of a particular shape (prime power, two primes)."""


class DimensionMismatch(MinCodesError, ValueError):
    pass


class ThresholdExceeded(MinCodesError):
    """An enumeration would exceed the configured element cap."""

    def __init__(self, cardinality, threshold):
        self.cardinality = cardinality
        self.threshold = threshold
        super().__init__(
            f"enumeration of {cardinality} elements exceeds threshold {threshold}"
        )


class PreconditionError(MinCodesError, ValueError):
    """A column multiset does not contain k linearly independent vectors."""


class MatrixParseError(MinCodesError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class DoublePerpViolation(MinCodesError, AssertionError):
    """(v^perp)^perp differed from <v>; indicates a bug, never expected."""


class DeciderMismatch(MinCodesError, AssertionError):
    """The definitional oracle and the orthogonal-module criterion disagreed."""
