"""Exception hierarchy shared by the numerical modules."""


class HypershellError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HypershellError, ValueError):
    """An argument lies outside the domain of the operation."""


class BesselOverflowError(HypershellError, OverflowError):
    """A Bessel function value is too large to represent as a float."""


class PoleError(HypershellError, ZeroDivisionError):
    """A logarithmic derivative was requested at a zero of the function."""


class BranchError(HypershellError, ValueError):
    """The operation is undefined on the coupling branch w1 = +/-1."""


class ConvergenceError(HypershellError, ArithmeticError):
    """An iterative solver failed to meet its tolerance."""


class EvaluationError(HypershellError, ArithmeticError):
    """A closed-form expression could not be evaluated reliably."""


class NoZeroModeError(HypershellError, ValueError):
    """No zero-energy state exists for the requested channel."""


class QuadratureError(HypershellError, ArithmeticError):
    """An adaptive integral did not reach its error tolerance."""
