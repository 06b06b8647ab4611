"""Exception hierarchy shared by all extlift modules."""


class ExtliftError(Exception):
    """Base class for all errors raised by extlift."""


class NotNormal(ExtliftError, ValueError):
    pass


class NotACocycle(ExtliftError, ValueError):
    pass


class CoefficientMismatch(ExtliftError, ValueError):
    pass


class NotEquivariant(ExtliftError, ValueError):
    pass


class NotSurjective(ExtliftError, ValueError):
    pass


class DimensionMismatch(ExtliftError, ValueError):
    pass


class SolverFailed(ExtliftError, RuntimeError):
    pass


class TooLarge(ExtliftError, ValueError):
    pass


class SchemaError(ExtliftError, ValueError):
    """A JSON problem document does not match its schema."""


class OracleMismatch(ExtliftError, AssertionError):
    """A constructive result disagrees with the brute-force oracle."""
