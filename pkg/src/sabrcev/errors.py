"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class NumericalError(ArithmeticError):
    """A numerical procedure failed to reach its accuracy target."""
