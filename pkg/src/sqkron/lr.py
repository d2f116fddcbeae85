"""Littlewood-Richardson coefficients, Pieri's rule and multiplicity-free skew shapes.

LR fillings of ``lam/mu`` are built cell by cell in reverse reading order
(rows top to bottom, each row right to left).  That is also the order of the
reverse reading word, so the lattice condition can be checked as each entry
is placed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .partitions import (
    BoxFrame,
    Partition,
    PartitionError,
    classify_shape,
    complement,
    conjugate,
    format_partition,
    shortness,
)


@dataclass(frozen=True)
class SkewShape:
    outer: Partition
    inner: Partition

    def __post_init__(self):
        if not contains(self.outer, self.inner):
            raise PartitionError(
                f"{format_partition(self.inner) or '()'} is not contained in {format_partition(self.outer) or '()'}"
            )

    @property
    def size(self) -> int:
        return sum(self.outer) - sum(self.inner)

    def cells(self) -> list[tuple[int, int]]:
        """Cells ``(row, col)`` (0-based) in reverse reading order."""
        inner = self.inner
        out = []
        for r, length in enumerate(self.outer):
            start = inner[r] if r < len(inner) else 0
            out.extend((r, c) for c in range(length - 1, start - 1, -1))
        return out

    def is_basic(self) -> bool:
        """No empty rows and no empty columns inside the outer shape."""
        lam, mu = self.outer, self.inner
        lam_c, mu_c = conjugate(lam), conjugate(mu)
        rows_ok = all(mu[i] < lam[i] for i in range(len(mu)) if i < len(lam))
        cols_ok = all(mu_c[j] < lam_c[j] for j in range(len(mu_c)) if j < len(lam_c))
        return rows_ok and cols_ok


def contains(lam, mu) -> bool:
    if len(mu) > len(lam):
        return False
    return all(m <= lam[i] for i, m in enumerate(mu))


def _fillings(outer: tuple[int, ...], inner: tuple[int, ...], content: tuple[int, ...] | None):
    """Yield the content (as a tuple of counts) of each LR filling of ``outer/inner``.

    With ``content`` given the search is restricted to that content.
    """
    shape = SkewShape(Partition(outer), Partition(inner))
    cells = shape.cells()
    grid: dict[tuple[int, int], int] = {}
    rows = len(outer)
    counts = [0] * (rows + 1)
    limit = list(content) + [0] * (rows + 1 - len(content)) if content is not None else None

    def place(idx: int):
        if idx == len(cells):
            yield tuple(c for c in counts if c) if content is None else tuple(counts)
            return
        r, c = cells[idx]
        hi = r + 1  # entries in row r are at most r + 1
        right = grid.get((r, c + 1))
        if right is not None:
            hi = min(hi, right)
        above = grid.get((r - 1, c))
        lo = 1 if above is None else above + 1
        for v in range(lo, hi + 1):
            # lattice: the reverse reading word never has more v than v - 1
            if v > 1 and counts[v - 1] >= counts[v - 2]:
                continue
            if limit is not None and counts[v - 1] >= limit[v - 1]:
                continue
            counts[v - 1] += 1
            grid[(r, c)] = v
            yield from place(idx + 1)
            del grid[(r, c)]
            counts[v - 1] -= 1

    yield from place(0)


def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    """``c^lam_{mu, nu}``: LR fillings of ``lam/mu`` with content ``nu``.

    Zero when ``mu`` is not contained in ``lam``.
    """
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if sum(mu) + sum(nu) != sum(lam):
        raise PartitionError(
            f"|mu| + |nu| = {sum(mu) + sum(nu)} differs from |lam| = {sum(lam)}"
        )
    return _lr(tuple(lam), tuple(mu), tuple(nu))


@lru_cache(maxsize=1 << 16)
def _lr(lam, mu, nu) -> int:
    if not contains(lam, mu) or not contains(lam, nu):
        return 0
    return sum(1 for _ in _fillings(lam, mu, nu))


def skew_expansion(lam: Partition, mu: Partition) -> dict[Partition, int]:
    """``{nu: c^lam_{mu, nu}}`` over every ``nu`` with a nonzero coefficient."""
    lam, mu = Partition(lam), Partition(mu)
    if not contains(lam, mu):
        return {}
    tally = Counter(Partition(c) for c in _fillings(tuple(lam), tuple(mu), None))
    return dict(sorted(tally.items(), reverse=True))


def pieri_expand(mu: Partition, n: int) -> list[Partition]:
    """Every ``lam`` with ``lam/mu`` a horizontal strip of ``n`` cells, in enumeration order."""
    if n < 0:
        raise PartitionError(f"cannot add {n} cells")
    mu = tuple(mu)
    padded = mu + (0,)
    out: list[Partition] = []

    def grow(i: int, left: int, acc: list[int]):
        if i == len(padded):
            if left == 0:
                out.append(Partition(acc))
            return
        top = left if i == 0 else min(left, padded[i - 1] - padded[i])
        for extra in range(top, -1, -1):
            acc.append(padded[i] + extra)
            grow(i + 1, left - extra, acc)
            acc.pop()

    grow(0, n, [])
    return sorted(set(out), reverse=True)


def _is_rectangle(p: Partition) -> bool:
    return classify_shape(p) == "rectangle"


def _is_fat_hook(p: Partition) -> bool:
    return classify_shape(p) == "fat_hook"


def is_multiplicity_free_skew(lam: Partition, mu: Partition, frame: BoxFrame | None = None) -> bool:
    """Whether ``s_{lam/mu}`` is multiplicity-free, for a basic skew shape.

    Decided by the rectangle / fat-hook / shortness conditions on ``mu`` and
    the complement of ``lam`` in ``frame``, which defaults to the
    ``lam[0]`` by ``len(lam)`` box.  Basicness is the caller's promise.
    """
    lam, mu = Partition(lam), Partition(mu)
    if not contains(lam, mu):
        raise PartitionError(f"{format_partition(mu) or '()'} is not contained in {format_partition(lam) or '()'}")
    if not lam:
        return True
    if frame is None:
        frame = BoxFrame.tight(lam)
    if not frame.contains(lam):
        raise PartitionError(f"{format_partition(lam)} does not fit the {frame.rows}x{frame.cols} frame")
    star = complement(lam, frame)

    def short(p: Partition) -> int:
        return shortness(p, frame)

    if not mu or not star:
        return True
    for a, b in ((mu, star), (star, mu)):
        if _is_rectangle(a) and short(a) == 1:
            return True
        if _is_rectangle(a) and short(a) == 2 and _is_fat_hook(b):
            return True
        if _is_rectangle(a) and _is_fat_hook(b) and short(b) == 1:
            return True
    return _is_rectangle(mu) and _is_rectangle(star)


def is_multiplicity_free_brute(lam: Partition, mu: Partition) -> bool:
    """Brute-force check: every LR coefficient ``c^lam_{mu, nu}`` is at most one."""
    return all(c <= 1 for c in skew_expansion(lam, mu).values())
