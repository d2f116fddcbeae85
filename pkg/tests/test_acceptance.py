"""Acceptance suite: one test and one summary line per criterion.

Every bound used below is pinned in the constants block.  Expected values
come from independent computations (direct character sums, enumeration,
brute-force tableau counts) rather than from the code under test where
that is possible.
"""

import os
import random
import time
from math import comb
from pathlib import Path

import pytest

from sqkron.certify import check_certificate, certify, from_json, leaves, make_triple, to_json, verify_certificate
from sqkron.characters import chi, centralizer_order, count_rim_hook_tableaux, dimension
from sqkron.cli import main
from sqkron.harness import appendix_classes
from sqkron.kronecker import (
    kron,
    kronecker_table,
    near_hook_character,
    near_two_row_formula,
    nk2_set,
    nk3_set,
    saxl_criterion,
    thm_nn,
)
from sqkron.lr import SkewShape, is_multiplicity_free_brute, is_multiplicity_free_skew, lr_coefficient
from sqkron.partitions import (
    BoxFrame,
    Partition,
    chopped_square,
    count_in_box,
    enumerate_partitions,
    near_hook,
    odd_staircase,
    rectangle,
    square,
)

GOLDEN = Path(__file__).parent / "golden"

# pinned bounds
M4_SECONDS = 60.0
M5_SECONDS = 15 * 60.0
M5_JOBS = 8
M5_JOBS_SECONDS = 5 * 60.0
CERT_SECONDS = 30.0
CHI_DIM_MAX_N = 12
ORTHOGONALITY_MAX_N = 9
LR_RANDOM_PAIRS = 200
LR_MAX_SIZE = 10
LR_SEED = 20240613
CLASSIFIER_FRAME = 5
NEAR_HOOK_M_RANGE = range(8, 31)
ZEROCASE_K_MAX = 40


def _fmt(parts):
    return ",".join(map(str, parts))


def _capture_missing(capsys, *argv):
    start = time.perf_counter()
    code = main(["missing", *argv])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    return code, out, elapsed


def test_criterion_01_appendix_m4(criterion, capsys):
    code, out, elapsed = _capture_missing(capsys, "4")
    got = [Partition(map(int, line.split(","))) for line in out.split()]
    want = appendix_classes(4)
    extra = [_fmt(p) for p in got if p not in want]
    absent = [_fmt(p) for p in want if p not in got]
    criterion(1, "kron missing 4 reproduces the 12 published classes", [
        ("exit", code == 0, f"code {code}"),
        ("classes", got == want, f"{len(got)} lines; extra {extra}, absent {absent}"),
        ("golden", out.encode() == (GOLDEN / "missing_4.txt").read_bytes(), "byte-exact"),
        ("time", elapsed < M4_SECONDS, f"{elapsed:.1f}s < {M4_SECONDS:.0f}s"),
    ])


def test_criterion_02_appendix_m5(criterion, capsys):
    code, out, elapsed = _capture_missing(capsys, "5")
    code_j, out_j, elapsed_j = _capture_missing(capsys, "5", "--jobs", str(M5_JOBS))
    got = [Partition(map(int, line.split(","))) for line in out.split()]
    criterion(2, "kron missing 5 reproduces the 7 published classes", [
        ("exit", code == 0 and code_j == 0, f"codes {code}, {code_j}"),
        ("classes", got == appendix_classes(5), f"{len(got)} lines"),
        ("golden", out.encode() == (GOLDEN / "missing_5.txt").read_bytes(), "byte-exact"),
        ("time", elapsed < M5_SECONDS, f"{elapsed:.1f}s < {M5_SECONDS:.0f}s"),
        ("jobs", out_j == out and elapsed_j < M5_JOBS_SECONDS,
         f"--jobs {M5_JOBS} identical in {elapsed_j:.1f}s"),
    ])


@pytest.mark.skipif(os.environ.get("KRON_SKIP_M6") == "1", reason="m = 6 scan disabled by KRON_SKIP_M6")
def test_criterion_03_appendix_m6(criterion, capsys):
    code, out, elapsed = _capture_missing(capsys, "6", "--budget-override")
    got = [Partition(map(int, line.split(","))) for line in out.split()]
    criterion(3, "kron missing 6 --budget-override reproduces the 8 published classes", [
        ("exit", code == 0, f"code {code}"),
        ("classes", got == appendix_classes(6) and Partition((19, 17)) in got, f"{len(got)} lines"),
        ("golden", out.encode() == (GOLDEN / "missing_6.txt").read_bytes(), "byte-exact"),
        ("time", True, f"{elapsed:.1f}s, no bound"),
    ])


def test_criterion_04_two_row(criterion):
    mismatches, cases = [], 0
    for l in range(2, 6):
        for m in range(2, 6):
            table = kronecker_table(rectangle(l, m), rectangle(l, m))
            n = l * m
            for k in range(n // 2 + 1):
                cases += 1
                want = count_in_box(k, l, m) - count_in_box(k - 1, l, m)
                if table.value((n - k, k)) != want:
                    mismatches.append((l, m, k))
    criterion(4, "oracle equals p_k - p_(k-1) on two-row targets, l, m in [2,5]", [
        ("exact", not mismatches, f"{cases} cases, mismatches {mismatches[:5]}"),
    ])


def _near_two_row_reference(k):
    # sum of distinct-part counts over alpha |- k-1 with alpha1 = alpha2, minus parts >= 3 count of k
    l1 = sum(len(set(a)) for a in enumerate_partitions(k - 1) if len(a) >= 2 and a[0] == a[1])
    f = sum(1 for a in enumerate_partitions(k) if all(p >= 3 for p in a))
    return l1 - f


def test_criterion_05_near_two_row(criterion):
    mismatches, cases = [], 0
    for m in (4, 5):
        table = kronecker_table(square(m), square(m))
        for k in range(2, m + 1):
            cases += 1
            got = table.value((m * m - k, k - 1, 1))
            if got != _near_two_row_reference(k) or got != near_two_row_formula(m, k):
                mismatches.append((m, k, got))
    wrong_zero = [k for k in range(2, ZEROCASE_K_MAX + 1) if (near_two_row_formula(k, k) == 0) != (k <= 4)]
    criterion(5, "near two-row formula equals the oracle and vanishes iff k <= 4", [
        ("oracle", not mismatches, f"{cases} cases, mismatches {mismatches}"),
        ("zero set", not wrong_zero, f"k in [2,{ZEROCASE_K_MAX}], wrong at {wrong_zero}"),
    ])


def test_criterion_06_thm_nn(criterion):
    mismatches, cases = [], 0
    for n in range(1, 7):
        table = kronecker_table((n, n), (n, n))
        for mu in enumerate_partitions(2 * n):
            cases += 1
            if (table.value(mu) > 0) != thm_nn(mu):
                mismatches.append((n, _fmt(mu)))
    criterion(6, "support of the tensor square of (n,n) matches the criterion, n <= 6", [
        ("exact", not mismatches, f"{cases} cases, mismatches {mismatches}"),
    ])


def test_criterion_07_near_hook_characters(criterion):
    m, hooks = 5, odd_staircase(5)
    chi_bad = [
        (i, k)
        for i, top in ((2, 4), (3, 6))
        for k in range(m * m - top + 1)
        if near_hook_character(m, i, k) != chi(near_hook(m, i, k), hooks)
    ]
    zero2, zero3 = [], []
    for m in NEAR_HOOK_M_RANGE:
        got2 = {k for k in range(m * m - 3) if near_hook_character(m, 2, k) == 0}
        got3 = {k for k in range(m * m - 6) if near_hook_character(m, 3, k) == 0}
        if got2 != nk2_set(m):
            zero2.append((m, sorted(nk2_set(m) - got2), sorted(got2 - nk2_set(m))))
        if got3 != nk3_set(m):
            zero3.append((m, sorted(nk3_set(m) - got3), sorted(got3 - nk3_set(m))))
    criterion(7, "near-hook character expressions and their zero sets", [
        ("chi m=5", not chi_bad, f"mismatches {chi_bad}"),
        ("NK2", not zero2, f"{len(zero2)} of {len(NEAR_HOOK_M_RANGE)} m differ, first (m, listed-not-zero, zero-not-listed) {zero2[:1]}"),
        ("NK3", not zero3, f"{len(zero3)} of {len(NEAR_HOOK_M_RANGE)} m differ {zero3[:1]}"),
    ])


def test_criterion_08_saxl_soundness(criterion):
    contradictions, positives, cases = [], 0, 0
    for m in (4, 5):
        mu = square(m)
        table = kronecker_table(mu, mu)
        for lam in enumerate_partitions(m * m):
            cases += 1
            if saxl_criterion(mu, lam) == "positive":
                positives += 1
                if table.value(lam) == 0:
                    contradictions.append((m, _fmt(lam)))
    criterion(8, "character criterion positive implies g > 0 for squares 4 and 5", [
        ("sound", not contradictions, f"{positives} positive of {cases}, contradictions {contradictions}"),
    ])


def test_criterion_09_rim_hook_remark(criterion):
    checks = []
    for m in (4, 6, 8):
        shape = Partition((m + 1,) * (m - 1) + (1,))
        signed, unsigned = count_rim_hook_tableaux(shape, odd_staircase(m))
        checks.append((f"m={m}", unsigned == 0 and signed == 0 and chi(shape, odd_staircase(m)) == 0,
                       f"count {unsigned}"))
    signed, unsigned = count_rim_hook_tableaux((5, 4), (5, 3, 1))
    checks.append(("(5,4)", unsigned == 0 and chi((5, 4), (5, 3, 1)) == 0, f"count {unsigned}"))
    criterion(9, "no rim-hook tableaux, hence chi = 0, in the remark's cases", checks)


def test_criterion_10_certificate_round_trip(criterion):
    sq4, sq6 = square(4), square(6)
    start = time.perf_counter()
    cert = certify(sq6, sq6, (26, 9, 1))
    elapsed = time.perf_counter() - start
    found = bool(cert)
    text = to_json(cert) if found else ""
    back = from_json(text) if found else None
    leaf_values = {leaf.triple: kron(*leaf.triple) for leaf in leaves(cert)} if found else {}
    named = make_triple(sq4, sq4, (8, 7, 1))
    g_named = kron(*named)
    two_row = [make_triple(rectangle(6, 2), rectangle(6, 2), (10, 2)), make_triple((4, 4), (4, 4), (8,))]
    two_row_ok = all(thm_nn(t[2]) or t[2] == (8,) for t in two_row) and all(kron(*t) > 0 for t in two_row)
    criterion(10, "the (26,9,1) certificate is found, round-trips and verifies", [
        ("found", found, f"{elapsed:.2f}s < {CERT_SECONDS:.0f}s" if elapsed < CERT_SECONDS else f"{elapsed:.2f}s"),
        ("round trip", found and back == cert and to_json(back) == text, "JSON"),
        ("verify", found and check_certificate(back).ok and verify_certificate(cert), "checker"),
        ("own leaves", bool(leaf_values) and all(v > 0 for v in leaf_values.values()),
         "oracle " + ", ".join(f"{_fmt(t[2])}:{v}" for t, v in leaf_values.items())),
        ("two-row leaves", two_row_ok, "criterion + oracle for (10,2) and (8)"),
        ("leaf (8,7,1)", g_named > 0, f"oracle g(square_4, square_4, (8,7,1)) = {g_named}"),
    ])


def test_criterion_11_characters(criterion, monkeypatch, capsys):
    dim_bad = [
        _fmt(lam)
        for n in range(1, CHI_DIM_MAX_N + 1)
        for lam in enumerate_partitions(n)
        if chi(lam, (1,) * n) != dimension(lam)
    ]
    orth_bad = []
    for n in range(1, ORTHOGONALITY_MAX_N + 1):
        classes = list(enumerate_partitions(n))
        cols = {a: [chi(lam, a) for lam in classes] for a in classes}
        for i, a in enumerate(classes):
            for b in classes[i:]:
                s = sum(x * y for x, y in zip(cols[a], cols[b]))
                if s != (centralizer_order(a) if a == b else 0):
                    orth_bad.append((n, _fmt(a), _fmt(b)))
    # corrupt one value and make sure the division check aborts with exit 3
    import sqkron.kronecker as kmod

    real = kmod.chi
    monkeypatch.setattr(kmod, "chi", lambda lam, alpha, cache=None: real(lam, alpha) + (1 if tuple(alpha) == (3,) else 0))
    code = main(["g", "3", "2,1", "2,1"])
    err = capsys.readouterr().err
    monkeypatch.setattr(kmod, "chi", real)
    criterion(11, "character values, orthogonality and the integrality abort", [
        ("dimension", not dim_bad, f"n <= {CHI_DIM_MAX_N}, bad {dim_bad[:5]}"),
        ("orthogonality", not orth_bad, f"n <= {ORTHOGONALITY_MAX_N}, bad {orth_bad[:5]}"),
        ("abort", code == 3 and "internal inconsistency" in err, f"exit {code}"),
    ])


def test_criterion_12_lr_layer(criterion):
    lam = chopped_square(4)
    worst, triples = 0, 0
    for b in range(sum(lam) + 1):
        for beta in enumerate_partitions(b, BoxFrame(4, 4)):
            for mu in enumerate_partitions(sum(lam) - b, BoxFrame(4, 4)):
                triples += 1
                worst = max(worst, lr_coefficient(lam, beta, mu))

    rng = random.Random(LR_SEED)
    dim_bad = []
    for _ in range(LR_RANDOM_PAIRS):
        total = rng.randint(0, LR_MAX_SIZE)
        a = rng.randint(0, total)
        mu = rng.choice(list(enumerate_partitions(a)))
        nu = rng.choice(list(enumerate_partitions(total - a)))
        lhs = sum(lr_coefficient(l, mu, nu) * dimension(l) for l in enumerate_partitions(total))
        if lhs != comb(total, a) * dimension(mu) * dimension(nu):
            dim_bad.append((_fmt(mu), _fmt(nu)))

    frame = BoxFrame(CLASSIFIER_FRAME, CLASSIFIER_FRAME)
    boxed = [p for n in range(CLASSIFIER_FRAME ** 2 + 1) for p in enumerate_partitions(n, frame)]
    shapes, disagree = 0, []
    for outer in boxed:
        for inner in boxed:
            if not outer or len(inner) > len(outer) or any(i > o for i, o in zip(inner, outer)):
                continue
            if not SkewShape(outer, inner).is_basic():
                continue
            shapes += 1
            if is_multiplicity_free_skew(outer, inner) != is_multiplicity_free_brute(outer, inner):
                disagree.append((_fmt(outer), _fmt(inner)))
    criterion(12, "LR coefficients, product dimension identity, multiplicity-free classifier", [
        ("chopped square", worst <= 1, f"max c = {worst} over {triples} pairs"),
        ("dimension", not dim_bad, f"{LR_RANDOM_PAIRS} random pairs, bad {dim_bad[:3]}"),
        ("classifier", not disagree, f"{shapes} basic shapes in {CLASSIFIER_FRAME}x{CLASSIFIER_FRAME}, disagree {disagree[:3]}"),
    ])
