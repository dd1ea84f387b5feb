"""Exception types raised across the package."""


class MatrixFormatError(ValueError):
    """A matrix file could not be parsed."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class DegenerateMatrixError(ValueError):
    """Fewer than two presence lists; the matrix has a single configuration."""


class NoSwapPossibleError(RuntimeError):
    """The matrix contains no checkerboard, so no swap can ever succeed."""


class EnumerationOverflowError(RuntimeError):
    def __init__(self, limit, count):
        self.limit = limit
        self.count = count
        super().__init__(
            f"enumeration overflow: more than {limit} configurations "
            f"({count} found before stopping)"
        )


class MarginViolationError(AssertionError):
    """Internal invariant broken: a randomized matrix changed its margins."""
