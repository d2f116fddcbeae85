"""Irreducible characters of the symmetric group by the Murnaghan-Nakayama rule.

Shapes are handled through beta-numbers: with ``L = len(lam)`` the beads sit
at ``lam[i] + L - 1 - i``.  Removing a border strip of size ``k`` is the
same as sliding one bead from ``b`` down to an empty position ``b - k >= 0``;
the strip's height is the number of beads jumped over.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Sequence

from .partitions import Partition, PartitionError, conjugate


@dataclass(frozen=True)
class BorderStripRemoval:
    shape: Partition
    height: int


def _beads(lam: Sequence[int]) -> list[int]:
    n = len(lam)
    return [p + n - 1 - i for i, p in enumerate(lam)]


def _from_beads(beads: Iterable[int]) -> Partition:
    beads = sorted(beads, reverse=True)
    n = len(beads)
    return Partition(b - (n - 1 - i) for i, b in enumerate(beads))


def border_strip_removals(lam: Partition, k: int) -> list[BorderStripRemoval]:
    """Every way of removing a size-``k`` border strip from ``lam``.

    Results are listed by resulting shape in enumeration order.
    """
    if k < 1:
        raise PartitionError(f"strip size must be positive, got {k}")
    return [BorderStripRemoval(shape, h) for shape, h in _removals(tuple(lam), k)]


@lru_cache(maxsize=1 << 16)
def _removals(lam: tuple[int, ...], k: int) -> tuple[tuple[Partition, int], ...]:
    beads = _beads(lam)
    occupied = set(beads)
    out = []
    for b in beads:
        target = b - k
        if target < 0 or target in occupied:
            continue
        height = sum(1 for c in beads if target < c < b)
        moved = [target if c == b else c for c in beads]
        out.append((_from_beads(moved), height))
    out.sort(key=lambda item: item[0], reverse=True)
    return tuple(out)


class CharCache:
    """Memo for character values keyed by ``(shape, remaining cycle type)``.

    The key carries the whole remaining suffix of the cycle type rather than an
    index into one fixed type, so a single cache may serve many cycle types
    that share suffixes.
    """

    __slots__ = ("_table", "hits", "misses")

    def __init__(self):
        self._table: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self._table)

    def get(self, key):
        value = self._table.get(key)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def put(self, key, value: int) -> None:
        self._table.setdefault(key, value)


def _check_sizes(lam: Sequence[int], alpha: Sequence[int]) -> None:
    if sum(lam) != sum(alpha):
        raise PartitionError(
            f"shape and cycle type sizes differ: |{tuple(lam)}| = {sum(lam)}, |{tuple(alpha)}| = {sum(alpha)}"
        )


def chi(lam: Partition, alpha: Sequence[int], cache: CharCache | None = None,
        order: str = "largest") -> int:
    """The character value of the irreducible ``lam`` on the class ``alpha``.

    Parts of ``alpha`` are stripped off largest first unless ``order`` is
    ``"smallest"``; the value does not depend on the order.
    """
    _check_sizes(lam, alpha)
    if order not in ("largest", "smallest"):
        raise ValueError(f"order must be 'largest' or 'smallest', got {order!r}")
    parts = sorted((p for p in alpha if p > 0), reverse=(order == "largest"))
    if cache is None:
        cache = CharCache()
    return _chi(tuple(lam), tuple(parts), cache)


def _chi(lam: tuple[int, ...], parts: tuple[int, ...], cache: CharCache) -> int:
    if not parts:
        return 1
    if len(parts) == 1:
        # a single strip must be the whole shape: only hooks survive
        if len(lam) > 1 and lam[1] > 1:
            return 0
        return -1 if (len(lam) - 1) % 2 else 1
    key = (lam, parts)
    hit = cache.get(key)
    if hit is not None:
        return hit
    k, rest = parts[0], parts[1:]
    total = 0
    for shape, height in _removals(lam, k):
        value = _chi(tuple(shape), rest, cache)
        total += -value if height % 2 else value
    cache.put(key, total)
    return total


def count_rim_hook_tableaux(lam: Partition, alpha: Sequence[int]) -> tuple[int, int]:
    """``(signed, unsigned)`` counts of rim-hook tableaux of shape ``lam`` and type ``alpha``.

    Strips are peeled off in the order the parts are listed: ``alpha[0]`` is
    the outermost strip, ``alpha[-1]`` the innermost.  The unsigned count
    depends on that order, the signed count (the character value) does not.
    """
    _check_sizes(lam, alpha)
    parts = tuple(p for p in alpha if p > 0)
    return _rim_counts(tuple(lam), parts)


@lru_cache(maxsize=1 << 18)
def _rim_counts(lam: tuple[int, ...], parts: tuple[int, ...]) -> tuple[int, int]:
    if not parts:
        return (1, 1)
    signed = unsigned = 0
    for shape, height in _removals(lam, parts[0]):
        s, u = _rim_counts(tuple(shape), parts[1:])
        signed += -s if height % 2 else s
        unsigned += u
    return (signed, unsigned)


def hook_lengths(lam: Partition) -> list[int]:
    lam_c = conjugate(lam)
    return [lam[i] - j + lam_c[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


@lru_cache(maxsize=1 << 16)
def _dimension(lam: tuple[int, ...]) -> int:
    n = sum(lam)
    return factorial(n) // prod(hook_lengths(Partition(lam)))


def dimension(lam: Partition) -> int:
    """Number of standard Young tableaux of shape ``lam`` (hook length formula)."""
    return _dimension(tuple(lam))


def centralizer_order(alpha: Iterable[int]) -> int:
    """``z_alpha``: the product of ``i**m_i * m_i!`` over part sizes ``i``."""
    return prod(i ** m * factorial(m) for i, m in Counter(p for p in alpha if p > 0).items())


def class_size(alpha: Partition) -> int:
    return factorial(sum(alpha)) // centralizer_order(alpha)
