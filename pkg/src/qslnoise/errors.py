"""Exception types raised across the package."""


class NotHermitian(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class DegenerateDerivative(ArithmeticError):
    """A Kraus coefficient derivative diverges (weight hits zero with nonzero slope)."""


class MissingDerivatives(ValueError):
    pass


class ZeroDenominator(ZeroDivisionError):
    pass


class StepTooLarge(ValueError):
    pass


class PositivityViolation(RuntimeError):
    """An integrated state left the positive cone; points at a generator bug."""
