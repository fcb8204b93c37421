"""Shared exception types."""


class DomainError(ValueError):
    """Raised when an input is outside an operation's domain.

    Examples: a partition that does not fit the requested box, a ring
    mismatch between operands, a matrix of odd dimension.
    """
