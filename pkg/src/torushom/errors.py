"""Exception hierarchy shared by all modules."""


class TorusHomError(Exception):
    """Base class for every error raised by the package."""


class InternalContradiction(TorusHomError):
    """An invariant that the mathematics guarantees has been violated.

    The CLI maps every subclass to exit code 3.
    """


class NotDivisible(InternalContradiction, ArithmeticError):
    pass


class ZeroDenominator(TorusHomError, ZeroDivisionError):
    pass


class InvalidState(TorusHomError, ValueError):
    pass


class SizeMismatch(TorusHomError, ValueError):
    pass


class CycleDetected(InternalContradiction):
    pass


class DepthExceeded(InternalContradiction):
    pass


class NonPolynomialResult(InternalContradiction):
    pass


class IndexOutOfRange(TorusHomError, IndexError):
    pass


class FingerprintMismatch(TorusHomError):
    pass
