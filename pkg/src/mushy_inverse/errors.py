"""Exception types shared across the solver modules."""


class MushyInverseError(Exception):
    """Base class for all package errors."""


class OverflowGuard(MushyInverseError, ArithmeticError):
    """exp(x**2) would exceed the representable range."""


class DomainError(MushyInverseError, ValueError):
    """Argument outside the domain where a formula is defined."""


class MissingParameter(MushyInverseError, KeyError):
    """A partial coefficient set lacks a field the formula reads."""


class NoBracket(MushyInverseError):
    """No sign change of the objective could be located."""


class MaxIterations(MushyInverseError):
    """Root refinement did not converge within the iteration budget."""


class NoRoot(MushyInverseError):
    """An auxiliary equation has no positive solution for the given data."""
