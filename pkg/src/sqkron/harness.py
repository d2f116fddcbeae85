"""Desk-scale checks of the published statements, one runner per theorem id.

Each runner walks a parameter range and records one outcome per instance.
A report with any failure is a failed report; skipped instances carry a
reason and do not count against it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .certify import WITNESS_ORDER, certify
from .characters import CharCache, chi, count_rim_hook_tableaux
from .errors import DomainError
from .kronecker import (
    kronecker_table,
    missing_partitions,
    mu2_positive,
    mu3_positive,
    near_hook_character,
    near_hook_zero_set,
    near_two_row_formula,
    nk2_set,
    nk3_set,
    saxl_criterion,
    thm_nn,
    two_row_formula,
)
from .partitions import (
    Partition,
    enumerate_partitions,
    format_partition,
    near_hook,
    odd_staircase,
    parse_partition,
    rectangle,
    square,
)

PASS, FAIL, SKIP = "pass", "fail", "skipped"


@dataclass(frozen=True)
class Outcome:
    label: str
    status: str
    detail: str = ""


@dataclass
class TheoremReport:
    theorem: str
    m_range: tuple[int, int]
    outcomes: list[Outcome] = field(default_factory=list)
    seconds: float = 0.0

    def count(self, status: str) -> int:
        return sum(1 for o in self.outcomes if o.status == status)

    @property
    def ok(self) -> bool:
        return self.count(FAIL) == 0

    def lines(self, verbose: bool = False) -> list[str]:
        out = []
        for o in self.outcomes:
            if verbose or o.status != PASS:
                tail = f"  {o.detail}" if o.detail else ""
                out.append(f"{o.status.upper():7s} {o.label}{tail}")
        lo, hi = self.m_range
        out.append(
            f"{self.theorem} [{lo}..{hi}]: {self.count(PASS)} passed, {self.count(FAIL)} failed, "
            f"{self.count(SKIP)} skipped in {self.seconds:.2f}s"
        )
        return out


def _check(label: str, got, want) -> Outcome:
    if got == want:
        return Outcome(label, PASS)
    return Outcome(label, FAIL, f"got {got}, expected {want}")


# --- runners ----------------------------------------------------------------------------

def _numofpart(lo: int, hi: int, **_) -> Iterator[Outcome]:
    for l in range(lo, hi + 1):
        for m in range(lo, hi + 1):
            table = kronecker_table(rectangle(l, m), rectangle(l, m))
            n = l * m
            for k in range(n // 2 + 1):
                nu = Partition((n - k, k))
                yield _check(f"l={l} m={m} k={k}", table.value(nu), two_row_formula(l, m, k))


def _prop_zerocase(lo: int, hi: int, **_) -> Iterator[Outcome]:
    for m in range(lo, hi + 1):
        table = kronecker_table(square(m), square(m))
        for k in range(2, m + 1):
            nu = Partition((m * m - k, k - 1, 1))
            yield _check(f"m={m} k={k}", table.value(nu), near_two_row_formula(m, k))


def _cor_zerocase(lo: int, hi: int, **_) -> Iterator[Outcome]:
    # the value does not depend on m once k <= m, so take m = k
    for k in range(max(lo, 2), hi + 1):
        yield _check(f"k={k}", near_two_row_formula(k, k) == 0, k <= 4)


def _thm_nn(lo: int, hi: int, **_) -> Iterator[Outcome]:
    for n in range(lo, hi + 1):
        two = Partition((n, n))
        table = kronecker_table(two, two)
        for mu in enumerate_partitions(2 * n):
            yield _check(f"n={n} mu={format_partition(mu)}", table.value(mu) > 0, thm_nn(mu))


def _near_hook_lemma(i: int, zero_set: Callable[[int], frozenset[int]], zero_from: int, lemma_top: int):
    top = 4 if i == 2 else 6

    def run(lo: int, hi: int, **_) -> Iterator[Outcome]:
        for m in range(lo, hi + 1):
            if m < zero_from:
                hooks = odd_staircase(m)
                cache = CharCache()
                for k in range(m * m - top + 1):
                    want = chi(near_hook(m, i, k), hooks, cache)
                    yield _check(f"m={m} k={k}", near_hook_character(m, i, k), want)
            else:
                # the zero set is stated for 0 <= k <= m^2 - lemma_top
                got = sorted(k for k in near_hook_zero_set(m, i) if k <= m * m - lemma_top)
                yield _check(f"m={m} zero set", got, sorted(zero_set(m)))

    return run


_DESK_WITNESSES = tuple(w for w in WITNESS_ORDER if w not in ("thm-hookpos", "cor-square-near-hooks"))


def _hook_family(i: int, predicate: Callable[[int, int], bool], budget: int):
    top = 4 if i == 2 else 6

    def run(lo: int, hi: int, **_) -> Iterator[Outcome]:
        for m in range(lo, hi + 1):
            box = square(m)
            cache = CharCache()
            for k in range(m * m - top + 1):
                nu = near_hook(m, i, k)
                label = f"m={m} k={k}"
                claimed = predicate(m, k)
                by_character = saxl_criterion(box, nu, cache) == "positive"
                if not claimed:
                    if by_character:
                        yield Outcome(label, FAIL, "stated zero but the character criterion gives g > 0")
                    else:
                        yield Outcome(label, SKIP, "stated zero; zeros are not desk-checkable at this size")
                    continue
                if by_character:
                    yield Outcome(label, PASS, "character-criterion")
                    continue
                cert = certify(box, box, nu, budget=budget, witnesses=_DESK_WITNESSES)
                if cert:
                    yield Outcome(label, PASS, "certificate")
                else:
                    yield Outcome(label, SKIP, f"no desk witness ({cert.reason})")

    return run


APPENDIX = {
    4: "15,1 14,1,1 13,2,1 12,3,1 12,1^4 11,5 10,1^6 9,7 8,7,1 8,2,1^6 7,7,2 7,5,4",
    5: "24,1 23,1,1 22,2,1 21,3,1 21,1^4 19,1^6 14,1^11",
    6: "35,1 34,1,1 33,2,1 32,3,1 32,1^4 30,1^6 23,1^13 19,17",
}


def appendix_classes(m: int) -> list[Partition]:
    """The published zero classes for ``m``, one per conjugate pair, in enumeration order."""
    return sorted((parse_partition(s) for s in APPENDIX[m].split()), reverse=True)


def _appendix(lo: int, hi: int, budget_override: bool = False, jobs: int = 1, **_) -> Iterator[Outcome]:
    for m in range(lo, hi + 1):
        if m not in APPENDIX:
            yield Outcome(f"m={m}", SKIP, "no published list")
            continue
        if m >= 6 and not budget_override:
            yield Outcome(f"m={m}", SKIP, "above the default budget; pass --budget-override")
            continue
        got = set(missing_partitions(m, budget_override=budget_override, jobs=jobs))
        want = set(appendix_classes(m))
        for nu in sorted(want | got, reverse=True):
            label = f"m={m} {format_partition(nu)}"
            if nu in want and nu in got:
                yield Outcome(label, PASS)
            elif nu in want:
                yield Outcome(label, FAIL, "listed, but g > 0")
            else:
                yield Outcome(label, FAIL, "g = 0, but not listed")


def _rimhook_remark(lo: int, hi: int, **_) -> Iterator[Outcome]:
    for m in range(lo, hi + 1):
        if m % 2:
            continue
        shape = Partition((m + 1,) * (m - 1) + (1,))
        hooks = odd_staircase(m)
        signed, unsigned = count_rim_hook_tableaux(shape, hooks)
        yield _check(f"m={m} unsigned count", unsigned, 0)
        yield _check(f"m={m} chi", signed, 0)
    signed, unsigned = count_rim_hook_tableaux(Partition((5, 4)), (5, 3, 1))
    yield _check("(5,4) type (5,3,1) unsigned count", unsigned, 0)
    yield _check("(5,4) type (5,3,1) chi", signed, 0)


@dataclass(frozen=True)
class TheoremCheck:
    domain: tuple[int, int]
    default: tuple[int, int]
    run: Callable[..., Iterator[Outcome]]
    about: str


THEOREMS: dict[str, TheoremCheck] = {
    "numofpart": TheoremCheck((1, 5), (2, 5), _numofpart,
                              "two-row coefficients of rectangles against p_k - p_(k-1); range is the side lengths"),
    "prop-zerocase": TheoremCheck((2, 5), (4, 5), _prop_zerocase,
                                  "near two-row coefficients of squares against the closed formula"),
    "cor-zerocase": TheoremCheck((2, 45), (2, 40), _cor_zerocase,
                                 "the near two-row formula vanishes exactly for k <= 4; range is k"),
    "thm-nn": TheoremCheck((1, 9), (1, 6), _thm_nn,
                           "support of the tensor square of (n,n); range is n"),
    "lem-casei2": TheoremCheck((3, 40), (8, 30), _near_hook_lemma(2, nk2_set, 8, 4),
                               "i = 2 near-hook characters: chi for m <= 7, zero set NK2 from m = 8"),
    "lem-casei3": TheoremCheck((3, 40), (7, 30), _near_hook_lemma(3, nk3_set, 7, 7),
                               "i = 3 near-hook characters: chi for m <= 6, zero set NK3 from m = 7"),
    "mu2hook": TheoremCheck((8, 10), (8, 8), _hook_family(2, mu2_positive, 2000),
                            "positivity of (m^2-k-2, 2, 1^k) via characters or certificates"),
    "mu3hook": TheoremCheck((7, 10), (7, 7), _hook_family(3, mu3_positive, 2000),
                            "positivity of (m^2-k-3, 3, 1^k) via characters or certificates"),
    "appendix": TheoremCheck((2, 6), (4, 5), _appendix,
                             "zero classes of the tensor square of a small square"),
    "rimhook-remark": TheoremCheck((2, 12), (4, 8), _rimhook_remark,
                                   "no rim-hook tableaux of ((m+1)^(m-1), 1) with the principal hooks as type"),
}


def run_theorem(theorem: str, m_range: tuple[int, int] | None = None, *,
                budget_override: bool = False, jobs: int = 1) -> TheoremReport:
    """Run the checks for ``theorem`` over ``m_range`` (inclusive)."""
    if theorem not in THEOREMS:
        raise DomainError(f"unknown theorem id {theorem!r}; known: {', '.join(THEOREMS)}")
    check = THEOREMS[theorem]
    lo, hi = m_range if m_range is not None else check.default
    dlo, dhi = check.domain
    if not dlo <= lo <= hi <= dhi:
        raise DomainError(f"{theorem} runs on ranges inside {dlo}..{dhi}, got {lo}..{hi}")
    report = TheoremReport(theorem, (lo, hi))
    start = time.perf_counter()
    report.outcomes.extend(check.run(lo, hi, budget_override=budget_override, jobs=jobs))
    report.seconds = time.perf_counter() - start
    return report
