"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested function."""


class ValidationError(DomainError):
    """Invalid manifold or label data."""


class CapacityError(DomainError):
    """The request exceeds a documented size envelope."""


class ConsistencyError(RuntimeError):
    """Two independent computations that must agree did not."""
