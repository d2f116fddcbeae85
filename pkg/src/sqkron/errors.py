"""Exception types shared across the package."""

from .partitions import PartitionError


class DomainError(ValueError):
    """A closed formula or predicate was queried outside its validity domain."""


class InternalInconsistency(RuntimeError):
    """An exactness check failed; this points at a bug, never at the input."""


class BudgetExceeded(RuntimeError):
    """A computation was refused because it is larger than the configured budget."""


__all__ = ["BudgetExceeded", "DomainError", "InternalInconsistency", "PartitionError"]
