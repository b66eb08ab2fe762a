"""Exception hierarchy shared by every module."""


class CubicNormError(Exception):
    """Base class for all errors raised by this package."""


class InvalidT(CubicNormError, ValueError):
    """The parameter t violates t >= 2."""


class InvalidRange(CubicNormError, ValueError):
    pass


class InvalidWindow(CubicNormError, ValueError):
    pass


class NegativePowerOfNonUnit(CubicNormError, ValueError):
    """Negative exponent requested for a base other than t - s."""


class BadModulus(CubicNormError, ValueError):
    pass


class EmptyPrimeSet(CubicNormError, ValueError):
    pass


class InsufficientPoints(CubicNormError, ValueError):
    pass


class InconclusivePrecision(CubicNormError, ArithmeticError):
    """An interval enclosure was too wide to decide an inequality."""
