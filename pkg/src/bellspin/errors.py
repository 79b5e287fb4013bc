class DomainError(ValueError):
    """Input outside the domain of an operation."""


class InvariantError(RuntimeError):
    """Two routes that must agree produced inconsistent answers."""
