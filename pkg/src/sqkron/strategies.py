"""Decomposition strategies for certificate search.

Each strategy recognises a family of targets ``(A, A, nu)``, mostly with
``A`` a square, and emits plans: trees of combiners over smaller goal
triples that add up to the target exactly.  The standard constructions come
first; where a recipe leaves freedom the remaining choices follow in a
fixed order.
"""

from __future__ import annotations

from math import isqrt
from typing import Callable, Iterable, Iterator

from .certify import Form, Split, Strategy, Triple, make_triple
from .partitions import Partition, PartitionError, conjugate, rectangle, square

_FLIP13 = Form((0, 1, 2), (1, 0, 1))


def _R(rows: int, cols: int) -> Partition:
    return rectangle(rows, cols)


def _goal(a, b, c) -> Triple:
    return make_triple(a, b, c)


def _rect_shape(p: Partition) -> tuple[int, int] | None:
    if p and len(set(p)) == 1:
        return len(p), p[0]
    return None


def _square_target(t: Triple) -> tuple[int, Partition] | None:
    a, b, c = t
    r = _rect_shape(a)
    if a != b or r is None or r[0] != r[1]:
        return None
    return r[0], c


def _built(make: Callable[[], Split]) -> Split | None:
    try:
        return make()
    except PartitionError:
        return None


def _emit(target: Triple, makers: Iterable[Callable[[], Split]]) -> Iterator[Split]:
    """Build candidate plans, dropping malformed ones and repeats."""
    seen = set()
    for make in makers:
        plan = _built(make)
        if plan is None or plan in seen or plan.claim() != target:
            continue
        seen.add(plan)
        yield plan


def _ladder(m: int, step: int, inner: Partition, strip: Partition, outer: Partition) -> Split:
    """``square_m = (square_(m-step) +V (m-step)^step) +H step^m`` with the third coordinate split three ways."""
    small = m - step
    return Split("HHH", (
        Split("VVH", (
            _goal(square(small), square(small), inner),
            _goal(_R(step, small), _R(step, small), strip),
        )),
        _goal(_R(m, step), _R(m, step), outer),
    ))


def _sub(nu: Iterable[int], tau: Iterable[int]) -> Partition:
    nu, tau = tuple(nu), tuple(tau)
    width = max(len(nu), len(tau))
    nu += (0,) * (width - len(nu))
    tau += (0,) * (width - len(tau))
    return Partition(a - b for a, b in zip(nu, tau))


# --- even side: peel two columns -------------------------------------------------------------

def _near_two_row_k(m: int, nu: Partition) -> int | None:
    if len(nu) == 3 and nu[2] == 1 and sum(nu) == m * m:
        return nu[1] + 1
    return None


def _even_square_applies(t: Triple) -> bool:
    sq = _square_target(t)
    return sq is not None and sq[0] % 2 == 0 and sq[0] >= 4 and _near_two_row_k(*sq) is not None


def _even_square_choice(r: int, k: int) -> tuple[int, int]:
    if 2 * k <= (2 * r - 1) ** 2:
        return r, max(r + 2 - k // 2, 0)
    return (4 * r * r - 2 * k + 1) // 4, 0


def _even_square(t: Triple) -> Iterator[Split]:
    m, nu = _square_target(t)
    k = _near_two_row_k(m, nu)
    r, n = m // 2, m * m
    grid = [_even_square_choice(r, k)] + [(a, b) for a in range(r + 1) for b in range(r)]

    def make(a: int, b: int) -> Callable[[], Split]:
        def build() -> Split:
            alpha = (n - k - 2 * (r + a) - 2 * (r - 1 + b), k - 1 - 2 * (r - a) - 2 * (r - 1 - b), 1)
            if alpha[1] < 5 or alpha[0] < alpha[1]:
                raise PartitionError("outside the feasible region")
            return _ladder(m, 2, Partition(alpha),
                           Partition((2 * (r - 1 + b), 2 * (r - 1 - b))),
                           Partition((2 * (r + a), 2 * (r - a))))
        return build

    yield from _emit(t, (make(a, b) for a, b in grid))


# --- odd side: peel one column -----------------------------------------------------------------

def _gap(nu: Partition) -> int:
    return nu[0] - (nu[1] if len(nu) > 1 else 0)


def _odd_strip_applies(t: Triple) -> bool:
    sq = _square_target(t)
    return sq is not None and sq[0] % 2 == 1 and sq[0] >= 3 and _gap(sq[1]) >= 2 * sq[0] - 1


def _odd_strip_plan(m: int, nu: Partition) -> Split:
    rest = Partition((nu[0] - 2 * m + 1,) + tuple(nu[1:]))
    return _ladder(m, 1, rest, Partition((m - 1,)), Partition((m,)))


def _odd_strip(t: Triple) -> Iterator[Split]:
    m, nu = _square_target(t)
    yield from _emit(t, [lambda: _odd_strip_plan(m, nu)])


# --- k^3 by 3x3 squares ---------------------------------------------------------------------------

def _three_rect(t: Triple) -> tuple[int, bool] | None:
    """``(k, vertical)`` for ``(k^3, k^3, k^3)`` or ``(3^k, 3^k, k^3)`` with ``k >= 6``."""
    a, b, c = t
    if a != b or _rect_shape(c) is None or len(c) != 3:
        return None
    k = c[0]
    if k < 6:
        return None
    if a == _R(3, k):
        return (k, False) if c == a else None
    if a == _R(k, 3):
        return k, True
    return None


def _square_3k(t: Triple) -> Iterator[Split]:
    k, vertical = _three_rect(t)
    r = {0: 0, 1: 4, 2: 5}[k % 3]
    j = (k - r) // 3
    blocks = [_goal(_R(3, 3), _R(3, 3), _R(3, 3))] * j
    if vertical:
        if r:
            blocks.append(_goal(_R(r, 3), _R(r, 3), _R(3, r)))
        yield from _emit(t, [lambda: Split("VVH", tuple(blocks))])
    else:
        if r:
            blocks.append(_goal(_R(3, r), _R(3, r), _R(3, r)))
        yield from _emit(t, [lambda: Split("HHH", tuple(blocks))])


# --- m^4 against (2m, 2m) ------------------------------------------------------------------------

def _four_row(t: Triple) -> tuple[int, bool] | None:
    a, b, c = t
    r = _rect_shape(a)
    if a != b or r is None or 4 not in r or len(c) != 2:
        return None
    vertical = r[1] == 4 and r[0] != 4
    m = r[0] if vertical else r[1]
    if m < 4 or c != (2 * m, 2 * m):
        return None
    return m, vertical


def _rect_4row(t: Triple) -> Iterator[Split]:
    m, vertical = _four_row(t)
    if m % 2:
        pieces = [(3, (6, 6)), (m - 3, (2 * m - 6, 2 * m - 6))]
    else:
        pieces = [(2, (4, 4))] * (m // 2)
    if vertical:
        goals = tuple(_goal(_R(w, 4), _R(w, 4), nu) for w, nu in pieces)
        yield from _emit(t, [lambda: Split("VVH", goals)])
    else:
        goals = tuple(_goal(_R(4, w), _R(4, w), nu) for w, nu in pieces)
        yield from _emit(t, [lambda: Split("HHH", goals)])


# --- peel three columns -------------------------------------------------------------------------------

def _mod3_family(m: int) -> list[Partition]:
    offsets = {
        2: [(2, -1, -1)],
        1: [(5, -1, -4), (5, 5, -10), (5, 2, -7)],
        0: [(3, 0, -3), (3, 3, -6)],
    }[m % 3]
    return [Partition(tuple((m * m + o) // 3 for o in off)) for off in offsets]


def _peel3(m: int, nu: Partition) -> Split:
    inner = _sub(nu, (2 * m - 3,) * 3)
    return _ladder(m, 3, inner, _R(3, m - 3), _R(3, m))


def _mod3_applies(t: Triple) -> bool:
    sq = _square_target(t)
    return sq is not None and sq[0] >= 8 and sq[1] in _mod3_family(sq[0])


def _mod3_ladder(t: Triple) -> Iterator[Split]:
    m, nu = _square_target(t)
    yield from _emit(t, [lambda: _peel3(m, nu)])


# --- three rows, even side ------------------------------------------------------------------------------

def _three_row(t: Triple, parity: int) -> bool:
    sq = _square_target(t)
    if sq is None:
        return False
    m, nu = sq
    return m % 2 == parity and m >= 4 and len(nu) == 3 and nu[2] >= 2


def _case_taus(m: int, nu: Partition) -> list[tuple[int, ...]]:
    l1, l2, l3 = nu
    taus = []
    if l2 - l3 >= 2 * m - 2:
        taus.append((2 * m - 2, 2 * m - 2, 0))
    t = (l2 - l3) // 2
    if l2 - l3 < 2 * m - 2 and l1 - l2 >= 4 * m - 4 - 4 * t:
        taus.append((4 * m - 4 - 2 * t, 2 * t, 0))
    k, rem = divmod((m - 2) ** 2, 3)
    par = (l1 % 2, l2 % 2, l3 % 2)
    if rem == 0:
        sigmas = {
            (0, 0, 0): [(k, k, k)],
            (1, 1, 0): [(k + 1, k + 1, k - 2)],
            (1, 0, 1): [(k + 1, k, k - 1)],
            (0, 1, 1): [(k + 2, k - 1, k - 1)],
        }
    else:
        sigmas = {
            (0, 0, 0): [(k + 1, k + 1, k - 1)],
            (1, 1, 0): [(k + 2, k, k - 1), (k + 2, k + 2, k - 3)],
            (1, 0, 1): [(k + 2, k + 1, k - 2)],
            (0, 1, 1): [(k + 1, k, k), (k + 5, k - 2, k - 2)],
        }
    for s in sigmas.get(par, []):
        taus.append(tuple(a - b for a, b in zip(nu, s)))
    return taus


def _even_taus(total: int) -> Iterator[tuple[int, int, int]]:
    half = total // 2
    for u in range(half, -1, -1):
        for v in range(min(u, half - u), -1, -1):
            w = half - u - v
            if w <= v:
                yield (2 * u, 2 * v, 2 * w)


def _tau_split(m: int, tau: tuple[int, ...]) -> Iterator[tuple[Partition, Partition]]:
    """``tau = (2a, 2b, 2c) + (2x, 2y, 2z)`` with the first part of size ``2m``."""
    u, v, w = (x // 2 for x in tau)
    a, b = -(-u // 2), -(-v // 2)
    first = [(a, b, m - a - b)]
    rest = [(a, b, m - a - b) for a in range(m, -1, -1) for b in range(m - a, -1, -1)]
    for a, b, c in first + rest:
        x, y, z = u - a, v - b, w - c
        if a >= b >= c >= 0 and x >= y >= z >= 0:
            yield Partition((2 * a, 2 * b, 2 * c)), Partition((2 * x, 2 * y, 2 * z))


def _three_row_even(t: Triple) -> Iterator[Split]:
    m, nu = _square_target(t)
    if len(set(nu)) == 1:
        return  # rectangles are the rectangle strategy's job
    taus = _case_taus(m, nu) + list(_even_taus(4 * m - 4))

    def make(tau) -> Callable[[], Split]:
        def build() -> Split:
            if any(x < 0 or x % 2 for x in tau) or list(tau) != sorted(tau, reverse=True):
                raise PartitionError("tau must be an even partition")
            sigma = _sub(nu, tau)
            if len(sigma) != 3 or sigma[2] < 2:
                raise PartitionError("sigma needs three rows and a third row of at least 2")
            for big, small in _tau_split(m, tau):
                return _ladder(m, 2, sigma, small, big)
            raise PartitionError("no even split")
        return build

    yield from _emit(t, (make(tau) for tau in taus))


# --- three rows, odd side ----------------------------------------------------------------------------------

def _three_row_odd(t: Triple) -> Iterator[Split]:
    m, nu = _square_target(t)
    l1, l2, l3 = nu
    makers: list[Callable[[], Split]] = []
    if l3 >= 2 * m - 1:
        makers.append(lambda: _peel3(m, nu))
    if l1 - l2 >= 2 * m - 1:
        makers.append(lambda: _odd_strip_plan(m, nu))

    a = l1 - l2
    x4 = (m - 4) ** 2 - l3
    hi, lo = -(-x4 // 2), x4 // 2

    def four(inner, strip, outer) -> Callable[[], Split]:
        return lambda: _ladder(m, 4, Partition(inner), Partition(strip), Partition(outer))

    if a in (0, 1):
        first = four((hi, lo, l3), (2 * m - 8, 2 * m - 8), (2 * m, 2 * m))
        second = four((hi + 2, lo + 2, l3 - 4), (2 * m - 8, 2 * m - 8), (2 * m - 2, 2 * m - 2, 4))
        makers += [first, second] if (m - 4) ** 2 >= 3 * l3 else [second, first]
    elif a in (2, 3):
        first = four((hi + 1, lo + 1, l3 - 2), (2 * m - 8, 2 * m - 8), (2 * m, 2 * m - 2, 2))
        second = four((hi + 3, lo + 3, l3 - 6), (2 * m - 10, 2 * m - 10, 4), (2 * m, 2 * m - 2, 2))
        makers += [first, second] if (m - 4) ** 2 >= 3 * (l3 - 2) else [second, first]
    else:
        x2 = (m - 2) ** 2 - l3
        delta = 1 if a % 4 in (2, 3) else 0
        sigma = (-(-x2 // 2) + delta, x2 // 2 - delta, l3)
        for x in range(a // 4):
            y = a // 4 - 1 - x
            makers.append(lambda x=x, y=y: _ladder(
                m, 2, Partition(sigma),
                Partition((m - 1 + 2 * y, m - 3 - 2 * y)),
                Partition((m + 1 + 2 * x, m - 1 - 2 * x)),
            ))
    yield from _emit(t, makers)


# --- near-hooks with a long second row --------------------------------------------------------------------

def _near_hook_params(t: Triple) -> tuple[int, int, int] | None:
    sq = _square_target(t)
    if sq is None:
        return None
    m, nu = sq
    if len(nu) < 2 or nu[1] < 8 or any(x != 1 for x in nu[2:]):
        return None
    return m, nu[1], len(nu) - 2


def _near_hook_wide(t: Triple) -> Iterator[Split]:
    m, i, k = _near_hook_params(t)
    n = m * m
    nu = t[2]

    def transposed(c: int) -> Callable[[], Split]:
        def build() -> Split:
            first = c * m - i + 1
            hook1 = Partition((first,) + (1,) * (i - 1))
            hook2 = Partition((k + 2 - first,) + (1,) * (n - i - k - 1))
            plan = Split("HHH", (
                _goal(_R(m, c), _R(m, c), hook1),
                _goal(_R(m, m - c), _R(m, m - c), hook2),
            ))
            if plan.claim() != _goal(square(m), square(m), conjugate(nu)):
                raise PartitionError("hooks do not add up")
            return plan.transformed(_FLIP13)
        return build

    def peeled(m1: int, a: int) -> Callable[[], Split]:
        def build() -> Split:
            b = i - 4 - a
            d1 = m1 * (m - m1) - 2 * a
            d2 = m * (m - m1) - 2 * b
            if b < 0 or d1 < 0 or d2 < 0:
                raise PartitionError("negative row")
            return _ladder(m, m - m1, Partition((m1 * m1 - k - 4, 4) + (1,) * k),
                           Partition((a + d1, a)), Partition((b + d2, b)))
        return build

    def preferred_a(m1: int) -> int | None:
        extra = n - m1 * m1 - 2 * (i - 4)
        if m % 2:
            whole = m * (m - m1)
            d2 = whole - 4 if extra == whole - 2 else min(whole, extra)
            if (whole - d2) % 2:
                return None
            return i - 4 - (whole - d2) // 2
        whole = m1 * (m - m1)
        d1 = whole - 4 if extra == whole - 2 else min(whole, extra)
        if (whole - d1) % 2:
            return None
        return (whole - d1) // 2

    columns = [7] + [c for c in range(8, m - 6)]
    by_transpose = [transposed(c) for c in columns if 7 <= c <= m - 7]
    m1 = isqrt(k + 7) + 1  # ceil(sqrt(k + 8))
    by_peeling = []
    for mm in range(m1, m):
        first = preferred_a(mm)
        order = ([first] if first is not None else []) + list(range(i - 3))
        by_peeling += [peeled(mm, a) for a in dict.fromkeys(order)]
    if k >= 7 * m + 9 - i:
        makers = by_transpose + by_peeling
    else:
        makers = by_peeling + by_transpose
    yield from _emit(t, makers)


# --- the (h, h, 1) ladder --------------------------------------------------------------------------------------

def _kk1(size: int) -> Partition:
    return Partition(((size - 1) // 2, (size - 1) // 2, 1))


def _almost_kk1(size: int) -> Partition:
    return Partition(((size + 1) // 2, (size - 3) // 2, 1))


def _kk1_target(t: Triple) -> str | None:
    a, b, c = t
    r = _rect_shape(a)
    if a != b or r is None:
        return None
    rows, cols = r
    n = rows * cols
    if n % 2 == 0 or len(c) != 3 or c[2] != 1:
        return None
    if rows != cols:
        return "rect" if c == _kk1(n) and rows % 2 and cols % 2 and rows > cols else None
    if c == _kk1(n):
        return "kk1"
    if c == _almost_kk1(n):
        return "almost"
    gap = c[0] - c[1]
    if gap > 2 and gap % 2 == 0:
        return "odd-case"
    return None


def _kk1_ladder(t: Triple) -> Iterator[Split]:
    kind = _kk1_target(t)
    a, _, nu = t
    rows, cols = len(a), a[0]
    makers: list[Callable[[], Split]] = []
    if kind == "kk1":
        m = rows
        if m == 9:
            makers.append(lambda: Split("HHH", (
                Split("VVH", (
                    _goal(_R(5, 5), _R(5, 5), (12, 12, 1)),
                    _goal(_R(4, 5), _R(4, 5), (10, 10)),
                )),
                _goal(_R(9, 4), _R(9, 4), (18, 18)),
            )))
        if m >= 11:
            makers.append(lambda: _ladder(m, 8, _kk1((m - 8) ** 2),
                                          Partition((4 * (m - 8),) * 2), Partition((4 * m,) * 2)))
    elif kind == "almost":
        m = rows
        if m >= 7:
            makers.append(lambda: _ladder(m, 4, _almost_kk1((m - 4) ** 2),
                                          Partition((2 * m - 8,) * 2), Partition((2 * m,) * 2)))
    elif kind == "odd-case" and rows >= 5:
        m = rows
        gap = nu[0] - nu[1]
        if gap % 4 == 0:
            base, quarters = _kk1((m - 2) ** 2), gap // 4
        else:
            base, quarters = _almost_kk1((m - 2) ** 2), (gap - 2) // 4
        for x in range(quarters):
            y = quarters - 1 - x
            makers.append(lambda x=x, y=y: _ladder(
                m, 2, base,
                Partition((m - 1 + 2 * y, m - 3 - 2 * y)),
                Partition((m + 1 + 2 * x, m - 1 - 2 * x)),
            ))
    elif kind == "rect":
        r, l = rows, cols
        if (r - l) % 4 == 0:
            half = l * (r - l) // 2
            makers.append(lambda: Split("VVH", (
                _goal(square(l), square(l), _kk1(l * l)),
                _goal(_R(r - l, l), _R(r - l, l), (half, half)),
            )))
        elif r > 10:
            makers.append(lambda: Split("VVH", (
                _goal(_R(10, l), _R(10, l), (5 * l, 5 * l)),
                _goal(_R(r - 10, l), _R(r - 10, l), _kk1((r - 10) * l)),
            )))
    yield from _emit(t, makers)


# --- rectangles k^l inside the tensor square ---------------------------------------------------------------

def _rectangle_applies(t: Triple) -> bool:
    sq = _square_target(t)
    if sq is None:
        return False
    m, nu = sq
    r = _rect_shape(nu)
    if r is None:
        return False
    l, k = r
    return l < m and k % l == 0 and m % l == 0


def _rectangle(t: Triple) -> Iterator[Split]:
    m, nu = _square_target(t)
    l = len(nu)
    q = m // l
    block = _goal(square(l), square(l), square(l))
    column = Split("VVH", (block,) * q)
    yield from _emit(t, [lambda: Split("HHH", (column,) * q)])


# --- generic peeling of a rectangle ------------------------------------------------------------------------

def horizontal_splits(nu: Partition, size: int) -> Iterator[tuple[Partition, Partition]]:
    """Pairs ``(rho, nu - rho)`` of partitions with ``|rho| = size``, ``rho`` in enumeration order."""
    nu = tuple(nu)
    rows = len(nu)
    acc: list[int] = []

    def grow(i: int, left: int, prev1: int, prev2: int):
        if i == rows:
            if left == 0:
                rho = Partition(acc)
                yield rho, _sub(nu, rho)
            return
        hi = min(prev1, nu[i], left)
        lo = max(0, nu[i] - prev2)
        for x in range(hi, lo - 1, -1):
            if left - x > (rows - i - 1) * x:
                break
            acc.append(x)
            yield from grow(i + 1, left - x, x, nu[i] - x)
            acc.pop()

    yield from grow(0, size, size, nu[0] if nu else 0)


def _rect_peel_applies(t: Triple) -> bool:
    a, b, _ = t
    return a == b and _rect_shape(a) is not None and sum(a) >= 2


def _rect_peel(t: Triple) -> Iterator[Split]:
    a, _, nu = t
    rows, cols = _rect_shape(a)
    cuts = []
    for piece in range(1, max(rows, cols) // 2 + 1):
        if piece <= cols // 2:
            cuts.append(("HHH", _R(rows, cols - piece), _R(rows, piece)))
        if piece <= rows // 2:
            cuts.append(("VVH", _R(rows - piece, cols), _R(piece, cols)))
    for combiner, big, small in cuts:
        limit_big = min(_rect_shape(big)) ** 2
        limit_small = min(_rect_shape(small)) ** 2
        for rho, rest in horizontal_splits(nu, sum(small)):
            if len(rho) > limit_small or len(rest) > limit_big:
                continue
            plan = Split(combiner, (_goal(big, big, rest), _goal(small, small, rho)))
            if plan.claim() == t:
                yield plan


# --- registry ---------------------------------------------------------------------------------------------

def _guarded(pred: Callable[[Triple], object]) -> Callable[[Triple], bool]:
    return lambda t: bool(pred(t))


def builtin_strategies() -> list[Strategy]:
    """The built-in strategies in search order."""
    return [
        Strategy("even-square", _even_square_applies, _even_square,
                 "square_2r = (square_2r-2 +V (2r-2)^2) +H 2^2r on near two-row targets"),
        Strategy("odd-strip", _odd_strip_applies, _odd_strip,
                 "square_m = (square_m-1 +V (m-1)) +H 1^m when nu1 - nu2 >= 2m - 1"),
        Strategy("square-3k", _guarded(_three_rect), _square_3k,
                 "k^3 as a horizontal sum of 3x3 squares and a 4x3 or 5x3 remainder"),
        Strategy("rect-4row", _guarded(_four_row), _rect_4row,
                 "m^4 = 3^4 +H (m-3)^4 against (2m, 2m)"),
        Strategy("mod3-ladder", _mod3_applies, _mod3_ladder,
                 "square_m = (square_m-3 +V (m-3)^3) +H 3^m on the near-balanced three-row families"),
        Strategy("three-row-even", lambda t: _three_row(t, 0), _three_row_even,
                 "two-column ladder with an even three-row tau on three-row targets, m even"),
        Strategy("three-row-odd", lambda t: _three_row(t, 1) and t[0][0] >= 5, _three_row_odd,
                 "one-, two-, three- and four-column ladders on three-row targets, m odd"),
        Strategy("near-hook-wide", _guarded(_near_hook_params), _near_hook_wide,
                 "hook splits after transposing, or a square_m1 near-hook plus two two-row pieces"),
        Strategy("kk1-ladder", _guarded(_kk1_target), _kk1_ladder,
                 "(h, h, 1) and (h+1, h-1, 1) ladders and their odd-side extensions"),
        Strategy("rectangle", _rectangle_applies, _rectangle,
                 "square_m as a grid of square_l blocks against k^l with l | k"),
        Strategy("rect-peel", _rect_peel_applies, _rect_peel,
                 "split a rectangle in two and the third shape horizontally"),
    ]


def strategies_by_name(names: Iterable[str]) -> list[Strategy]:
    table = {s.name: s for s in builtin_strategies()}
    out = []
    for name in names:
        if name not in table:
            raise ValueError(f"unknown strategy {name!r}; known: {', '.join(table)}")
        out.append(table[name])
    return out
