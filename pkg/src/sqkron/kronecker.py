"""Kronecker coefficients: the character-sum oracle, whole tables, and closed forms.

Every closed formula and zero-set predicate here carries the hypotheses of
the result it transcribes and raises :class:`DomainError` outside them rather
than extrapolating.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

from . import engine
from .characters import CharCache, centralizer_order, chi, dimension
from .errors import BudgetExceeded, DomainError, InternalInconsistency
from .partitions import (
    Partition,
    PartitionError,
    conjugate,
    count_distinct_odd_range,
    count_in_box,
    count_no_small_parts,
    distinct_part_count,
    enumerate_partitions,
    format_partition,
    is_self_conjugate,
    principal_hooks,
    square,
)

PROVENANCES = ("oracle", "formula-two-row", "formula-near-two-row", "character-criterion")

# Largest side length scanned by missing_partitions without an explicit override.
MISSING_BUDGET_M = 5


def _same_size(*shapes: Partition) -> int:
    sizes = {sum(s) for s in shapes}
    if len(sizes) != 1:
        listed = ", ".join(f"|{format_partition(s) or '()'}| = {sum(s)}" for s in shapes)
        raise PartitionError(f"sizes must agree: {listed}")
    return sizes.pop()


# --- the oracle -------------------------------------------------------------------

def kron(lam: Partition, mu: Partition, nu: Partition, cache: CharCache | None = None) -> int:
    """``g(lam, mu, nu)`` as ``(1/n!) * sum over alpha of (n!/z_alpha) chi^lam chi^mu chi^nu``."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    return _kron(*sorted((lam, mu, nu)), cache=cache)


def _kron(lam, mu, nu, cache=None) -> int:
    n = _same_size(lam, mu, nu)
    if cache is None:
        cache = CharCache()
    nfact = factorial(n)
    total = 0
    for alpha in enumerate_partitions(n):
        a = chi(lam, alpha, cache)
        if a == 0:
            continue
        b = chi(mu, alpha, cache)
        if b == 0:
            continue
        c = chi(nu, alpha, cache)
        if c:
            total += (nfact // centralizer_order(alpha)) * a * b * c
    value, rest = divmod(total, nfact)
    if rest or value < 0:
        raise InternalInconsistency(
            f"character sum for g({lam}, {mu}, {nu}) is {total}, not a nonnegative multiple of {n}!"
        )
    return value


@lru_cache(maxsize=4096)
def kron_cached(lam: Partition, mu: Partition, nu: Partition) -> int:
    return kron(lam, mu, nu)


# --- tables -----------------------------------------------------------------------------

@dataclass
class KroneckerTable:
    """``g(lam, mu, nu)`` for every ``nu`` of the common size, with provenance per entry."""

    lam: Partition
    mu: Partition
    entries: dict[Partition, tuple[int, str]] = field(default_factory=dict)

    @property
    def lhs(self) -> tuple[Partition, Partition]:
        return (self.lam, self.mu)

    def value(self, nu: Partition) -> int:
        return self.entries[Partition(nu)][0]

    def support(self) -> list[Partition]:
        return [nu for nu, (g, _) in self.entries.items() if g > 0]

    def zeros(self) -> list[Partition]:
        return [nu for nu, (g, _) in self.entries.items() if g == 0]

    def is_complete(self) -> bool:
        return len(self.entries) == len(engine.partitions_of(sum(self.lam)))

    def dimension_identity_holds(self) -> bool:
        total = sum(g * dimension(nu) for nu, (g, _) in self.entries.items())
        return total == dimension(self.lam) * dimension(self.mu)

    def to_json(self) -> str:
        return json.dumps({
            "lhs": [format_partition(self.lam), format_partition(self.mu)],
            "entries": [
                {"nu": format_partition(nu), "g": g, "by": by} for nu, (g, by) in self.entries.items()
            ],
        })

    @classmethod
    def from_json(cls, text: str) -> "KroneckerTable":
        from .partitions import parse_partition

        data = json.loads(text)
        lam, mu = (parse_partition(s) for s in data["lhs"])
        entries = {parse_partition(e["nu"]): (int(e["g"]), e["by"]) for e in data["entries"]}
        return cls(lam, mu, entries)

    def to_tsv(self) -> str:
        lines = ["nu\tg\tby"]
        lines += [f"{format_partition(nu)}\t{g}\t{by}" for nu, (g, by) in self.entries.items()]
        return "\n".join(lines) + "\n"


def kronecker_table(lam: Partition, mu: Partition, jobs: int = 1) -> KroneckerTable:
    """The complete table ``nu -> g(lam, mu, nu)``; every entry comes from the character sum."""
    lam, mu = Partition(lam), Partition(mu)
    _same_size(lam, mu)
    row = engine.kronecker_row(lam, mu, jobs=jobs)
    return KroneckerTable(lam, mu, {nu: (g, "oracle") for nu, g in row.items()})


def tensor_square_support(lam: Partition, jobs: int = 1) -> KroneckerTable:
    return kronecker_table(lam, lam, jobs=jobs)


def canonical_representative(nu: Partition) -> Partition:
    """The lexicographically larger of ``nu`` and its conjugate."""
    return max(Partition(nu), conjugate(nu))


def missing_partitions(m: int, budget_override: bool = False, jobs: int = 1) -> list[Partition]:
    """Partitions ``nu`` of ``m*m`` with ``g(square, square, nu) = 0``, one per conjugate pair.

    The lexicographically larger member of each pair is listed, in enumeration
    order.  Side lengths above :data:`MISSING_BUDGET_M` need ``budget_override``.
    """
    if m < 2:
        raise DomainError(f"missing_partitions needs m >= 2, got {m}")
    if m > MISSING_BUDGET_M and not budget_override:
        raise BudgetExceeded(
            f"m = {m} scans p({m * m}) partitions and exceeds the default budget "
            f"(m <= {MISSING_BUDGET_M}); pass --budget-override to run it anyway"
        )
    table = tensor_square_support(square(m), jobs=jobs)
    reps = {canonical_representative(nu) for nu in table.zeros()}
    return sorted(reps, reverse=True)


# --- closed formulas --------------------------------------------------------------------

def two_row_formula(l: int, m: int, k: int) -> int:
    """``g(m^l, m^l, (lm - k, k)) = p_k(l, m) - p_(k-1)(l, m)`` for ``0 <= k <= lm/2``."""
    if l < 1 or m < 1:
        raise DomainError(f"rectangle sides must be positive, got {l} x {m}")
    if not 0 <= 2 * k <= l * m:
        raise DomainError(f"two-row formula needs 0 <= k <= lm/2 = {l * m / 2}, got k = {k}")
    return count_in_box(k, l, m) - count_in_box(k - 1, l, m)


@lru_cache(maxsize=None)
def _equal_top_l1_sum(n: int) -> int:
    return sum(
        distinct_part_count(a)
        for a in enumerate_partitions(n)
        if len(a) >= 2 and a[0] == a[1]
    )


def near_two_row_formula(m: int, k: int) -> int:
    """``g(square_m, square_m, (m^2 - k, k - 1, 1))`` for ``2 <= k <= m``."""
    if not 2 <= k <= m:
        raise DomainError(f"near two-row formula needs 2 <= k <= m = {m}, got k = {k}")
    return _equal_top_l1_sum(k - 1) - count_no_small_parts(k)


# --- zero-set predicates ------------------------------------------------------------------

def _need(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


def two_row_positive(m: int, k: int) -> bool:
    """``g(square_m, square_m, (m^2 - k, k)) > 0``; valid for ``m >= 7`` and ``0 <= k <= m^2/2``.

    Positive exactly when ``k != 1``.
    """
    _need(m >= 7, f"two_row_positive is stated for m >= 7, got m = {m}")
    _need(0 <= 2 * k <= m * m, f"two_row_positive needs 0 <= k <= m^2/2, got k = {k}")
    return k != 1


def near_two_row_zero(m: int, k: int) -> bool:
    """``g(square_m, square_m, (m^2 - k, k - 1, 1)) = 0``; valid for ``m >= 2`` and ``2 <= k <= m``."""
    _need(m >= 2, f"near_two_row_zero needs m >= 2, got m = {m}")
    _need(2 <= k <= m, f"near_two_row_zero needs 2 <= k <= m, got k = {k}")
    return k <= 4


def near_two_row_positive(m: int, k: int) -> bool:
    """The long-second-row statement: valid for ``m >= 5`` and ``2 <= k <= (m^2 + 1)/2``."""
    _need(m >= 5, f"near_two_row_positive is stated for m >= 5, got m = {m}")
    _need(2 <= k and 2 * k <= m * m + 1, f"(m^2 - k, k - 1, 1) needs 2 <= k <= (m^2+1)/2, got k = {k}")
    return k >= 5


def hook_zero(b: int, m: int, k: int) -> bool:
    """``g((mb - k, 1^k), b x m, b x m) = 0`` for ``b >= 7``, ``m >= b``, ``0 <= k <= mb - 1``."""
    _need(b >= 7, f"hook_zero is stated for b >= 7, got b = {b}")
    _need(m >= b, f"hook_zero needs m >= b, got b = {b}, m = {m}")
    _need(0 <= k <= m * b - 1, f"hook_zero needs 0 <= k <= mb - 1 = {m * b - 1}, got k = {k}")
    if k >= b * b:
        return True
    return k in {1, 2, 4, 6, b * b - 2, b * b - 3, b * b - 5, b * b - 7}


def conjectured_zero_set(m: int) -> list[Partition]:
    """``S`` together with its conjugates, in enumeration order (``m >= 7``)."""
    _need(m >= 7, f"the zero-set description is stated for m >= 7, got m = {m}")
    n = m * m
    base = [Partition((n - 3, 2, 1)), Partition((n - 4, 3, 1))]
    base += [Partition((n - j,) + (1,) * j) for j in (1, 2, 4, 6)]
    return sorted({p for s in base for p in (s, conjugate(s))}, reverse=True)


def nk2_set(m: int) -> frozenset[int]:
    return frozenset({1, 2, 4, 6, 8, m * m - 12, m * m - 10, m * m - 8, m * m - 6, m * m - 5})


def nk3_set(m: int) -> frozenset[int]:
    return frozenset({1, 3, m * m - 10, m * m - 8})


def nk2(m: int, k: int) -> bool:
    """Whether ``k`` lies in the i = 2 character zero set ``NK2(m)`` (``m >= 8``, ``0 <= k <= m^2 - 4``)."""
    _need(m >= 8, f"nk2 is stated for m >= 8, got m = {m}")
    _need(0 <= k <= m * m - 4, f"nk2 needs 0 <= k <= m^2 - 4, got k = {k}")
    return k in nk2_set(m)


def nk3(m: int, k: int) -> bool:
    """Whether ``k`` lies in ``NK3(m)`` (``m >= 7``, ``0 <= k <= m^2 - 7``).

    The set is stated for m >= 5, but at m = 5 and m = 6 the character has
    further zeros, so the domain here starts at 7.
    """
    _need(m >= 7, f"nk3 holds from m = 7 on, got m = {m}")
    _need(0 <= k <= m * m - 7, f"nk3 needs 0 <= k <= m^2 - 7, got k = {k}")
    return k in nk3_set(m)


def thm_nn(mu: Partition) -> bool:
    """``g((n,n), (n,n), mu) > 0``: at most four parts all even, or exactly four parts all odd."""
    mu = Partition(mu)
    if len(mu) <= 4 and all(p % 2 == 0 for p in mu):
        return True
    return len(mu) == 4 and all(p % 2 == 1 for p in mu)


def mu2_positive(m: int, k: int) -> bool:
    """``g(square_m, square_m, (m^2-k-2, 2, 1^k)) > 0`` (``m >= 8``, ``0 <= k <= m^2 - 4``)."""
    _need(m >= 8, f"mu2_positive is stated for m >= 8, got m = {m}")
    _need(0 <= k <= m * m - 4, f"mu2_positive needs 0 <= k <= m^2 - 4, got k = {k}")
    return k not in (1, m * m - 5)


def mu3_positive(m: int, k: int) -> bool:
    """``g(square_m, square_m, (m^2-k-3, 3, 1^k)) > 0`` (``m >= 7``, ``0 <= k <= m^2 - 6``)."""
    _need(m >= 7, f"mu3_positive is stated for m >= 7, got m = {m}")
    _need(0 <= k <= m * m - 6, f"mu3_positive needs 0 <= k <= m^2 - 6, got k = {k}")
    return k != 1


def near_hook_wide_positive(m: int, i: int, k: int) -> bool:
    """Near-hooks with second row ``i >= 8`` (``m >= 20``, ``0 <= k <= m^2 - 2i``)."""
    _need(i >= 8, f"near_hook_wide_positive needs i >= 8, got i = {i}")
    _need(m >= 20, f"near_hook_wide_positive is stated for m >= 20, got m = {m}")
    _need(0 <= k <= m * m - 2 * i, f"(m^2-k-i, i, 1^k) needs 0 <= k <= m^2 - 2i, got k = {k}")
    return True


def square_near_hook_positive(m: int, i: int, k: int) -> bool:
    """Near-hooks with second row ``2 <= i <= 7`` (``m >= 7``, ``0 <= k <= m^2 - 2i``).

    The exceptions are ``i = 2`` with ``k`` in ``{1, m^2 - 5}`` and ``i = 3``
    with ``k = 1``.
    """
    _need(m >= 7, f"square_near_hook_positive is stated for m >= 7, got m = {m}")
    _need(2 <= i <= 7, f"square_near_hook_positive needs 2 <= i <= 7, got i = {i}")
    _need(0 <= k <= m * m - 2 * i, f"(m^2-k-i, i, 1^k) needs 0 <= k <= m^2 - 2i, got k = {k}")
    if i == 2:
        return k not in (1, m * m - 5)
    if i == 3:
        return k != 1
    return True


# --- characters at the principal hooks -------------------------------------------------------

def near_hook_character(m: int, i: int, k: int) -> int:
    """``chi^{(m^2-k-i, i, 1^k)}`` at ``(2m-1, 2m-3, ..., 1)`` by counting subsets of ``{5, 7, ..., 2m-1}``."""
    _need(m >= 3, f"near_hook_character needs m >= 3, got m = {m}")
    P = lambda j: count_distinct_odd_range(j, m)  # noqa: E731
    if i == 2:
        _need(0 <= k <= m * m - 4, f"i = 2 needs 0 <= k <= m^2 - 4, got k = {k}")
        return -P(k) - P(k + 2) - P(k - 2)
    if i == 3:
        _need(0 <= k <= m * m - 6, f"i = 3 needs 0 <= k <= m^2 - 6, got k = {k}")
        return P(k) + P(k + 3)
    raise DomainError(f"near_hook_character covers i in {{2, 3}}, got i = {i}")


def near_hook_zero_set(m: int, i: int) -> set[int]:
    top = m * m - (4 if i == 2 else 6)
    return {k for k in range(top + 1) if near_hook_character(m, i, k) == 0}


def saxl_criterion(mu: Partition, lam: Partition, cache: CharCache | None = None) -> str:
    """``"positive"`` when ``chi^lam`` is nonzero at the principal hooks of ``mu``, else ``"inconclusive"``."""
    mu, lam = Partition(mu), Partition(lam)
    if not is_self_conjugate(mu):
        raise PartitionError(f"{format_partition(mu)} is not self-conjugate")
    _same_size(mu, lam)
    return "positive" if chi(lam, principal_hooks(mu), cache) != 0 else "inconclusive"


# --- method dispatch ---------------------------------------------------------------------------

def _as_rectangle(p: Partition) -> tuple[int, int] | None:
    """``(rows, cols)`` if ``p`` is a nonempty rectangle."""
    if p and len(set(p)) == 1:
        return len(p), p[0]
    return None


def formula_value(lam: Partition, mu: Partition, nu: Partition) -> tuple[int, str] | None:
    """A closed-form value for the triple when one applies, trying all argument orders."""
    for a, b, c in _orders(lam, mu, nu):
        if a != b:
            continue
        rect = _as_rectangle(a)
        if rect is None:
            continue
        rows, cols = rect
        n = rows * cols
        if len(c) <= 2:
            k = c[1] if len(c) == 2 else 0
            if 2 * k <= n:
                return two_row_formula(rows, cols, k), "formula-two-row"
        if rows == cols and len(c) == 3 and c[2] == 1:
            k = c[1] + 1
            if c[0] == n - k and 2 <= k <= rows:
                return near_two_row_formula(rows, k), "formula-near-two-row"
    return None


def _orders(lam, mu, nu):
    return ((lam, mu, nu), (lam, nu, mu), (mu, nu, lam))


def g_value(lam: Partition, mu: Partition, nu: Partition, method: str = "auto") -> tuple[int, str]:
    """Evaluate ``g`` with ``method`` in ``{"auto", "oracle", "formula"}``; returns ``(value, used)``."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    _same_size(lam, mu, nu)
    if method not in ("auto", "oracle", "formula"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("auto", "formula"):
        hit = formula_value(lam, mu, nu)
        if hit is not None:
            return hit
        if method == "formula":
            raise DomainError(
                "no closed formula covers this triple: need (m^l, m^l, two-row) "
                "or (square_m, square_m, (m^2-k, k-1, 1)) with 2 <= k <= m"
            )
    return kron(lam, mu, nu), "oracle"
