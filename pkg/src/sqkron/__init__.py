"""Kronecker coefficients of symmetric groups, with a focus on tensor squares of square shapes."""

from .characters import chi, count_rim_hook_tableaux, dimension
from .certify import (
    Leaf,
    Node,
    NotFound,
    certify,
    check_certificate,
    verify_certificate,
)
from .errors import BudgetExceeded, DomainError, InternalInconsistency
from .kronecker import g_value, kron, kronecker_table, missing_partitions
from .lr import is_multiplicity_free_skew, lr_coefficient, pieri_expand
from .partitions import BoxFrame, Partition, PartitionError, parse_partition
from .strategies import builtin_strategies

__version__ = "0.1.0"

__all__ = [
    "BoxFrame",
    "BudgetExceeded",
    "DomainError",
    "InternalInconsistency",
    "Leaf",
    "Node",
    "NotFound",
    "Partition",
    "PartitionError",
    "builtin_strategies",
    "certify",
    "check_certificate",
    "chi",
    "count_rim_hook_tableaux",
    "dimension",
    "g_value",
    "is_multiplicity_free_skew",
    "kron",
    "kronecker_table",
    "lr_coefficient",
    "missing_partitions",
    "parse_partition",
    "pieri_expand",
    "verify_certificate",
]
