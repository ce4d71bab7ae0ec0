"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside an operation's domain (zero where nonzero is
    required, a singular curve where a smooth one is required, ...)."""


class InvariantViolation(RuntimeError):
    """Computed data contradicts a structural invariant (a group orbit of
    size below 8, an inconsistent oracle fact, ...).  Signals bad input
    data rather than a bad argument."""


class FactorizationError(RuntimeError):
    """Trial division exhausted its bound with a composite cofactor left."""
