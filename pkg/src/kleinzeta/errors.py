"""Exception types shared across the package."""


class KleinZetaError(Exception):
    """Base class for errors raised by this package."""


class BudgetExceeded(KleinZetaError):
    """A computation would exceed a configured size budget."""


class NonIntegralError(KleinZetaError, ArithmeticError):
    """An exact quantity expected to be a rational integer is not."""


class WeilViolation(KleinZetaError, ArithmeticError):
    """A numerator polynomial fails the functional equation or the Riemann hypothesis."""
