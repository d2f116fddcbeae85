"""Whole-table Kronecker computation.

For fixed ``lam`` and ``mu`` the numbers ``g(lam, mu, nu)`` for every ``nu`` of
size ``n`` come from

    g(lam, mu, .) = sum over alpha of  chi^lam(alpha) chi^mu(alpha) / z_alpha  *  chi^.(alpha)

where ``chi^.(alpha)`` is a full column of the character table.  Columns are
produced by a depth-first walk over cycle types written as nondecreasing part
sequences: each edge adds one part ``k`` by multiplying with the sparse signed
strip-addition matrix from partitions of ``j`` to partitions of ``j + k``.
Sibling cycle types share every prefix product.

The weighted sum is formed modulo a few word-sized primes and lifted by the
Chinese remainder theorem.  The prime set is chosen so that its product
exceeds ``dim(lam) * dim(mu)``, an upper bound for every entry, and the lifted
table must satisfy ``sum g * dim(nu) == dim(lam) * dim(mu)`` exactly.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from math import prod
from multiprocessing import get_context
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .characters import centralizer_order, dimension
from .errors import InternalInconsistency
from .partitions import Partition, enumerate_partitions

log = logging.getLogger(__name__)

CACHE_VERSION = 1
_INT63 = 1 << 62


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


@lru_cache(maxsize=None)
def _primes_below(limit: int, count: int) -> tuple[int, ...]:
    out = []
    q = limit - 1
    while len(out) < count:
        if _is_prime(q):
            out.append(q)
        q -= 1
    return tuple(out)


def choose_primes(bound: int) -> tuple[int, ...]:
    """Primes below 2**31 whose product exceeds ``bound``, plus one spare."""
    count = 1
    while prod(_primes_below(1 << 31, count)) <= bound:
        count += 1
    return _primes_below(1 << 31, count + 1)


# --- partition indexing and strip matrices -----------------------------------

@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    return tuple(enumerate_partitions(n))


@lru_cache(maxsize=None)
def partition_index(n: int) -> dict[Partition, int]:
    return {p: i for i, p in enumerate(partitions_of(n))}


def _beads(lam) -> list[int]:
    n = len(lam)
    return [p + n - 1 - i for i, p in enumerate(lam)]


def _shape_from_beads(beads: list[int]) -> Partition:
    beads = sorted(beads, reverse=True)
    n = len(beads)
    parts = [b - (n - 1 - i) for i, b in enumerate(beads)]
    while parts and parts[-1] == 0:
        parts.pop()
    return tuple.__new__(Partition, parts)


@lru_cache(maxsize=None)
def _all_removals(size: int) -> dict[int, list[tuple[int, int, int]]]:
    """For every nu of ``size``: ``k -> [(row nu, col lam, sign)]`` with lam = nu minus a k-strip."""
    by_k: dict[int, list[tuple[int, int, int]]] = {}
    for row, nu in enumerate(partitions_of(size)):
        beads = _beads(nu)
        occupied = set(beads)
        for b in beads:
            jumped = 0
            for t in range(b - 1, -1, -1):
                if t in occupied:
                    jumped += 1
                    continue
                k = b - t
                moved = [t if c == b else c for c in beads]
                lam = _shape_from_beads(moved)
                col = partition_index(size - k)[lam]
                by_k.setdefault(k, []).append((row, col, -1 if jumped % 2 else 1))
    return by_k


@lru_cache(maxsize=None)
def strip_matrix(j: int, k: int) -> sp.csr_matrix:
    """Signed adjacency from partitions of ``j`` to partitions of ``j + k`` via one k-strip."""
    entries = _all_removals(j + k).get(k, [])
    shape = (len(partitions_of(j + k)), len(partitions_of(j)))
    if not entries:
        return sp.csr_matrix(shape, dtype=np.int64)
    rows, cols, vals = zip(*entries)
    return sp.csr_matrix((np.array(vals, dtype=np.int64), (rows, cols)), shape=shape)


def max_dimension(n: int) -> int:
    return max(dimension(p) for p in partitions_of(n))


def exact_columns_safe(n: int) -> bool:
    """Whether int64 holds every partial character sum for size ``n``."""
    return (n + 1) * max_dimension(n) < _INT63


# --- column generation -------------------------------------------------------

def _children(n: int, total: int, last: int):
    # next part k >= last, leaving a remainder that can still be filled
    for k in range(max(last, 1), n - total + 1):
        rest = n - total - k
        if rest == 0 or rest >= k:
            yield k


def _prefix_vector(prefix: tuple[int, ...], channels: np.ndarray | None, width: int):
    vec = np.ones((1, width), dtype=np.int64)
    total = 0
    for k in prefix:
        vec = strip_matrix(total, k) @ vec
        if channels is not None:
            vec %= channels
        total += k
    return vec, total


def iter_columns(n: int, primes: tuple[int, ...] | None, prefix: tuple[int, ...] = ()):
    """Yield ``(alpha, column)`` for every cycle type extending ``prefix``.

    With ``primes`` the column has one residue channel per prime, else it is a
    single exact int64 channel.
    """
    channels = None if primes is None else np.array(primes, dtype=np.int64)
    width = 1 if primes is None else len(primes)
    start, total = _prefix_vector(prefix, channels, width)
    stack = [(list(prefix), total, start)]
    while stack:
        parts, total, vec = stack.pop()
        if total == n:
            yield Partition(reversed(parts)), vec
            continue
        last = parts[-1] if parts else 1
        kids = []
        for k in _children(n, total, last):
            nxt = strip_matrix(total, k) @ vec
            if channels is not None:
                nxt %= channels
            kids.append((parts + [k], total + k, nxt))
        stack.extend(reversed(kids))


def _task_prefixes(n: int, want: int) -> list[tuple[int, ...]]:
    """A frontier of prefixes whose subtrees partition the cycle-type tree."""
    frontier: list[tuple[tuple[int, ...], int]] = [((), 0)]
    while len(frontier) < want:
        grown = []
        expanded = False
        for prefix, total in frontier:
            if total == n:
                grown.append((prefix, total))
                continue
            expanded = True
            last = prefix[-1] if prefix else 1
            grown.extend((prefix + (k,), total + k) for k in _children(n, total, last))
        frontier = grown
        if not expanded:
            break
    return [p for p, _ in frontier]


# --- weighted accumulation -----------------------------------------------------

@dataclass
class _Job:
    n: int
    lam: Partition
    mu: Partition
    primes: tuple[int, ...]
    exact: bool
    prefix: tuple[int, ...] = ()


def _accumulate(job: _Job) -> np.ndarray:
    n, primes = job.n, job.primes
    index = partition_index(n)
    li, mi = index[job.lam], index[job.mu]
    mods = np.array(primes, dtype=np.int64)
    acc = np.zeros((len(index), len(primes)), dtype=np.int64)
    source = iter_columns(n, None if job.exact else primes, job.prefix)
    for alpha, col in source:
        if job.exact:
            xl, xm = int(col[li, 0]), int(col[mi, 0])
            if xl == 0 or xm == 0:
                continue
            res = col[:, :1] % mods
        else:
            if not col[li].any() or not col[mi].any():
                continue
            res = col
        _add_weighted(acc, res, alpha, li, mi, primes, mods)
    return acc


def _add_weighted(acc, res, alpha, li, mi, primes, mods):
    z = centralizer_order(alpha)
    w = np.array(
        [int(res[li, r]) * int(res[mi, r]) % q * pow(z, -1, q) % q for r, q in enumerate(primes)],
        dtype=np.int64,
    )
    acc += (res * w) % mods
    acc %= mods


def _accumulate_from_table(table: np.ndarray, n: int, lam, mu, primes) -> np.ndarray:
    index = partition_index(n)
    li, mi = index[lam], index[mu]
    mods = np.array(primes, dtype=np.int64)
    acc = np.zeros((len(index), len(primes)), dtype=np.int64)
    for a, alpha in enumerate(partitions_of(n)):
        row = table[a]
        if row[li] == 0 or row[mi] == 0:
            continue
        res = row[:, None] % mods
        _add_weighted(acc, res, alpha, li, mi, primes, mods)
    return acc


def _crt(residues: np.ndarray, primes: tuple[int, ...]) -> list[int]:
    modulus = prod(primes)
    coeffs = []
    for q in primes:
        rest = modulus // q
        coeffs.append(rest * pow(rest, -1, q))
    out = []
    for row in residues.tolist():
        out.append(sum(int(v) * c for v, c in zip(row, coeffs)) % modulus)
    return out


# --- on-disk character table -----------------------------------------------------

def _cache_path(n: int) -> Path | None:
    root = os.environ.get("KRON_CACHE_DIR")
    if not root:
        return None
    return Path(root) / f"chartable-v{CACHE_VERSION}-n{n}.npy"


def _load_table(n: int) -> np.ndarray | None:
    path = _cache_path(n)
    if path is None or not path.exists():
        return None
    try:
        table = np.load(path, allow_pickle=False)
    except (OSError, ValueError):
        log.warning("ignoring unreadable character cache %s", path)
        return None
    size = len(partitions_of(n))
    if table.shape != (size, size) or table.dtype != np.int64:
        log.warning("ignoring character cache %s with unexpected layout", path)
        return None
    return table


def character_table(n: int) -> np.ndarray:
    """Exact table indexed ``[alpha, nu]``, both in enumeration order.

    Only available while int64 is wide enough; see :func:`exact_columns_safe`.
    """
    if not exact_columns_safe(n):
        raise OverflowError(f"character values for n={n} do not fit in int64")
    table = _load_table(n)
    if table is not None:
        return table
    index = partition_index(n)
    table = np.zeros((len(index), len(index)), dtype=np.int64)
    for alpha, col in iter_columns(n, None):
        table[index[alpha]] = col[:, 0]
    path = _cache_path(n)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_name(path.name + f".{os.getpid()}.tmp.npy")
        np.save(tmp, table)
        os.replace(tmp, path)
    return table


# --- public entry point --------------------------------------------------------------

def kronecker_row(lam: Partition, mu: Partition, jobs: int = 1) -> dict[Partition, int]:
    """``{nu: g(lam, mu, nu)}`` over every partition ``nu`` of ``|lam|``, in enumeration order."""
    n = sum(lam)
    if sum(mu) != n:
        raise ValueError(f"sizes differ: |{tuple(lam)}| = {n}, |{tuple(mu)}| = {sum(mu)}")
    nus = partitions_of(n)
    if n == 0:
        return {Partition(): 1}
    bound = dimension(lam) * dimension(mu)
    primes = choose_primes(bound)
    exact = exact_columns_safe(n)

    table = _load_table(n) if exact else None
    if table is not None:
        acc = _accumulate_from_table(table, n, lam, mu, primes)
    elif exact and _cache_path(n) is not None:
        acc = _accumulate_from_table(character_table(n), n, lam, mu, primes)
    elif jobs <= 1:
        acc = _accumulate(_Job(n, lam, mu, primes, exact))
    else:
        prefixes = _task_prefixes(n, 4 * jobs)
        tasks = [_Job(n, lam, mu, primes, exact, p) for p in prefixes]
        mods = np.array(primes, dtype=np.int64)
        acc = np.zeros((len(nus), len(primes)), dtype=np.int64)
        with get_context("fork").Pool(jobs) as pool:
            for part in pool.imap(_accumulate, tasks):
                acc = (acc + part) % mods

    values = _crt(acc, primes)
    check = sum(g * dimension(nu) for g, nu in zip(values, nus))
    if check != bound or any(g > bound for g in values):
        raise InternalInconsistency(
            f"table for {tuple(lam)} x {tuple(mu)} fails the dimension identity: {check} != {bound}"
        )
    return dict(zip(nus, values))
