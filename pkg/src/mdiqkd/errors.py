"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Party count or array shape is outside the supported range."""


class DomainError(ValueError):
    """A numeric argument lies outside its mathematical domain."""


class IncompleteModelError(ValueError):
    """A correlation model is missing entries for some setting vectors."""


class EnumerationCapError(ValueError):
    """An exhaustive enumeration would exceed the configured size cap."""


class ConvergenceError(RuntimeError):
    """A numerical routine failed to converge within its iteration cap."""


class InsufficientDataError(RuntimeError):
    """Simulation statistics do not cover the quantity being estimated."""
