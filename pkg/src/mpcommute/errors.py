"""Exception hierarchy shared by every module of the package."""


class MatrixError(Exception):
    """Base class for all errors raised by mpcommute."""


class DimensionMismatch(MatrixError, ValueError):
    pass


class NotSquare(MatrixError, ValueError):
    pass


class NonFiniteEntry(MatrixError, ValueError):
    pass


class ConvergenceFailure(MatrixError, ArithmeticError):
    """The SVD kernel hit its sweep cap without reaching orthogonality."""


class DegenerateSample(MatrixError, ArithmeticError):
    """A random draw was numerically singular after all retries."""


class RankOutOfRange(MatrixError, ValueError):
    pass


class SizeCap(MatrixError, ValueError):
    pass


class InvalidTuple(MatrixError, ValueError):
    """A tuple specification violates its structural invariants."""
