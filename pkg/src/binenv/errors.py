"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class CapabilityError(RuntimeError):
    """The request is valid but exceeds the documented exhaustive-computation budget."""


class PrecisionError(RuntimeError):
    """A certified comparison could not be decided below the precision cap."""
