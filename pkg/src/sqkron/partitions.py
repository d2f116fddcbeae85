"""Integer partitions and the counting functions built on them.

A :class:`Partition` is an immutable tuple of weakly decreasing positive
integers.  Everything that produces several partitions does so in
reverse-lexicographic order, e.g. for n = 4::

    (4), (3,1), (2,2), (2,1,1), (1,1,1,1)

which for partitions of a fixed size coincides with descending tuple order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator


class PartitionError(ValueError):
    """Raised for malformed partitions or violated shape preconditions."""


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Trailing zeros are dropped on construction, so ``Partition((3, 1, 0))``
    equals ``Partition((3, 1))``.  Equality and hashing are plain tuple
    equality and hashing.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        prev = None
        for p in parts:
            if not isinstance(p, int) or isinstance(p, bool):
                raise PartitionError(f"parts must be integers, got {p!r}")
            if p <= 0:
                raise PartitionError(f"parts must be positive: {parts}")
            if prev is not None and p > prev:
                raise PartitionError(f"parts must be weakly decreasing: {parts}")
            prev = p
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        return parse_partition(text)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """The ``i``-th part (0-based), zero past the end."""
        return self[i] if i < len(self) else 0

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    def __str__(self) -> str:
        return format_partition(self)


@dataclass(frozen=True)
class BoxFrame:
    """An ambient ``rows`` x ``cols`` rectangle (``cols`` is the row length)."""

    rows: int
    cols: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise PartitionError(f"frame sides must be positive: {self.rows}x{self.cols}")

    def contains(self, lam: Partition) -> bool:
        return len(lam) <= self.rows and (not lam or lam[0] <= self.cols)

    @classmethod
    def tight(cls, lam: Partition) -> "BoxFrame":
        """The smallest frame holding ``lam``: ``lam[0]`` columns, ``len(lam)`` rows."""
        if not lam:
            raise PartitionError("the empty partition has no tight frame")
        return cls(rows=len(lam), cols=lam[0])


# --- text syntax -----------------------------------------------------------

_TOKEN = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_partition(text: str) -> Partition:
    """Parse ``"5,3,2"`` or exponent shorthand such as ``"4^3,1"``.

    The empty string is the empty partition.
    """
    text = text.strip()
    if text in ("", "()", "0"):
        return Partition()
    text = text.strip("()[] ")
    parts: list[int] = []
    for token in text.split(","):
        m = _TOKEN.match(token)
        if m is None:
            raise PartitionError(f"cannot parse partition component {token!r} in {text!r}")
        value = int(m.group(1))
        reps = int(m.group(2)) if m.group(2) is not None else 1
        parts.extend([value] * reps)
    return Partition(parts)


def format_partition(lam: Iterable[int]) -> str:
    return ",".join(str(p) for p in lam)


# --- named shapes ------------------------------------------------------------

def rectangle(rows: int, cols: int) -> Partition:
    """``cols^rows``: ``rows`` rows of length ``cols``."""
    if rows <= 0 or cols <= 0:
        return Partition()
    return Partition((cols,) * rows)


def square(m: int) -> Partition:
    return rectangle(m, m)


def chopped_square(m: int) -> Partition:
    """``(m^(m-1), m-1)``: the square with its corner box removed."""
    return Partition((m,) * (m - 1) + (m - 1,))


def near_hook(m: int, i: int, k: int) -> Partition:
    """``(m^2 - k - i, i, 1^k)``."""
    first = m * m - k - i
    if i < 1 or k < 0 or first < i:
        raise PartitionError(f"({m}^2-{k}-{i}, {i}, 1^{k}) is not a partition")
    return Partition((first, i) + (1,) * k)


def odd_staircase(m: int) -> Partition:
    """``(2m-1, 2m-3, ..., 3, 1)``, the principal hook lengths of the m x m square."""
    return Partition(range(2 * m - 1, 0, -2))


# --- structural operations -------------------------------------------------

def conjugate(lam: Iterable[int]) -> Partition:
    lam = tuple(lam)
    if not lam:
        return Partition()
    out = []
    j = 1
    n = len(lam)
    while j <= lam[0]:
        while n and lam[n - 1] < j:
            n -= 1
        out.append(n)
        j += 1
    return Partition(out)


def is_self_conjugate(lam: Partition) -> bool:
    return conjugate(lam) == tuple(lam)


def dominates(lam: Partition, mu: Partition) -> bool:
    """Dominance order: every partial sum of ``lam`` is at least that of ``mu``."""
    if sum(lam) != sum(mu):
        raise PartitionError(f"dominance needs equal sizes: |{lam}| != |{mu}|")
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def durfee(lam: Iterable[int]) -> int:
    d = 0
    for i, p in enumerate(lam, start=1):
        if p >= i:
            d = i
        else:
            break
    return d


def horizontal_sum(lam: Iterable[int], mu: Iterable[int]) -> Partition:
    """Row-wise sum, the shorter partition padded with zeros."""
    lam, mu = tuple(lam), tuple(mu)
    if len(lam) < len(mu):
        lam, mu = mu, lam
    return Partition(tuple(a + (mu[i] if i < len(mu) else 0) for i, a in enumerate(lam)))


def vertical_sum(lam: Iterable[int], mu: Iterable[int]) -> Partition:
    """Column-wise sum: the conjugate of the horizontal sum of conjugates."""
    return conjugate(horizontal_sum(conjugate(lam), conjugate(mu)))


def _require_fit(lam: Partition, frame: BoxFrame) -> None:
    if not frame.contains(lam):
        raise PartitionError(f"{format_partition(lam) or '()'} does not fit in a {frame.rows}x{frame.cols} frame")


def complement(lam: Partition, frame: BoxFrame) -> Partition:
    """The complement of ``lam`` in ``frame``, rotated by 180 degrees."""
    _require_fit(lam, frame)
    padded = tuple(lam) + (0,) * (frame.rows - len(lam))
    return Partition(frame.cols - p for p in reversed(padded))


def boundary_path(lam: Partition, frame: BoxFrame) -> str:
    """The lattice path from the SW to the NE corner of ``frame`` cutting off ``lam``.

    ``R`` is a unit step east, ``U`` a unit step north; the path has
    ``frame.rows + frame.cols`` steps.
    """
    _require_fit(lam, frame)
    steps = []
    below = 0
    for i in range(frame.rows - 1, -1, -1):
        row = lam[i] if i < len(lam) else 0
        steps.append("R" * (row - below))
        steps.append("U")
        below = row
    steps.append("R" * (frame.cols - below))
    return "".join(steps)


def shortness(lam: Partition, frame: BoxFrame) -> int:
    """Length of the shortest maximal straight run of :func:`boundary_path`."""
    path = boundary_path(lam, frame)
    return min(len(m.group(0)) for m in re.finditer(r"R+|U+", path))


def classify_shape(lam: Partition) -> str:
    """``"rectangle"`` (one distinct part size), ``"fat_hook"`` (two) or ``"other"``.

    The empty partition is ``"other"``.
    """
    kinds = len(set(lam))
    if kinds == 1:
        return "rectangle"
    if kinds == 2:
        return "fat_hook"
    return "other"


def distinct_part_count(alpha: Iterable[int]) -> int:
    return len(set(alpha))


def principal_hooks(mu: Partition) -> Partition:
    """Diagonal hook lengths ``(2mu_1 - 1, 2mu_2 - 3, ...)`` of a self-conjugate shape."""
    if not is_self_conjugate(mu):
        raise PartitionError(f"{format_partition(mu)} is not self-conjugate")
    d = durfee(mu)
    return Partition(2 * mu[i] - (2 * i + 1) for i in range(d))


# --- enumeration and counting ------------------------------------------------

def _partitions(n: int, max_part: int, max_len: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        if first * max_len < n:
            break
        for rest in _partitions(n - first, first, max_len - 1):
            yield (first,) + rest


def enumerate_partitions(n: int, frame: BoxFrame | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` (fitting ``frame`` if given), reverse-lexicographic."""
    if n < 0:
        raise PartitionError(f"cannot enumerate partitions of {n}")
    max_part = frame.cols if frame is not None else n
    max_len = frame.rows if frame is not None else n
    for parts in _partitions(n, max_part, max_len):
        yield tuple.__new__(Partition, parts)


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(n - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


@lru_cache(maxsize=None)
def count_in_box(k: int, a: int, b: int) -> int:
    """Partitions of ``k`` with at most ``a`` parts, each at most ``b``.

    Equivalently the coefficient of q^k in the Gaussian binomial [a+b, a]_q.
    Zero for ``k < 0`` and ``k > ab``.
    """
    if a < 0 or b < 0:
        raise PartitionError(f"box sides must be nonnegative: {a}x{b}")
    if k < 0 or k > a * b:
        return 0
    if k == 0:
        return 1
    # fewer than a parts, or exactly a parts (strip the first column)
    return count_in_box(k, a - 1, b) + count_in_box(k - a, a, b - 1)


def count_no_small_parts(k: int) -> int:
    """Partitions of ``k`` with every part at least 3."""
    if k < 0:
        return 0
    ways = [1] + [0] * k
    for part in range(3, k + 1):
        for total in range(part, k + 1):
            ways[total] += ways[total - part]
    return ways[k]


def odd_range(m: int) -> tuple[int, ...]:
    """``(5, 7, ..., 2m-1)``."""
    return tuple(range(5, 2 * m, 2))


def count_distinct_odd_range(k: int, m: int) -> int:
    """Subsets of ``{5, 7, ..., 2m-1}`` summing to ``k``."""
    if m < 2:
        raise PartitionError(f"odd range needs m >= 2, got {m}")
    return _odd_range_counts(m)[k] if 0 <= k <= m * m - 4 else 0


@lru_cache(maxsize=64)
def _odd_range_counts(m: int) -> tuple[int, ...]:
    top = max(m * m - 4, 0)
    ways = [1] + [0] * top
    for part in odd_range(m):
        for total in range(top, part - 1, -1):
            ways[total] += ways[total - part]
    return tuple(ways)
