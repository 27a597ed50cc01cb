"""Exception types shared across the library."""


class LowRankSegError(Exception):
    """Base class for all library errors."""


class DimensionError(LowRankSegError, ValueError):
    """Matrix shape is incompatible with the requested operation."""


class SymmetryError(LowRankSegError, ValueError):
    """Input is asymmetric beyond the allowed tolerance."""


class ParameterError(LowRankSegError, ValueError):
    """A scalar/flag argument is out of its valid range."""


class ParseError(LowRankSegError, ValueError):
    """A matrix file could not be parsed."""


class DivergenceError(LowRankSegError, RuntimeError):
    """An iterative solver produced non-finite values."""
