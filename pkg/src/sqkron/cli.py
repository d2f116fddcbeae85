"""The ``kron`` command.

Exit codes: 0 success, 1 mathematical negative (no certificate, failed
verification, failed theorem check), 2 usage or domain error, 3 internal
inconsistency.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import engine
from .certify import (
    ORACLE_CAP,
    CertificateError,
    MalformedCertificate,
    OracleCapExceeded,
    WitnessNotApplicable,
    certify,
    check_certificate,
    from_json,
    to_json,
)
from .characters import chi
from .errors import BudgetExceeded, DomainError, InternalInconsistency
from .harness import THEOREMS, run_theorem
from .kronecker import g_value, kronecker_table, missing_partitions
from .lr import lr_coefficient, pieri_expand
from .partitions import Partition, PartitionError, format_partition, parse_partition
from .strategies import builtin_strategies, strategies_by_name

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("sqkron")


class UsageError(Exception):
    pass


def _partition(text: str) -> Partition:
    try:
        return parse_partition(text)
    except PartitionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _m_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            return int(text), int(text)
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


# --- commands -----------------------------------------------------------------------------------

def cmd_g(args) -> int:
    value, used = g_value(args.lam, args.mu, args.nu, method=args.method)
    print(f"{value} ({used})")
    return EXIT_OK


def cmd_chi(args) -> int:
    print(chi(args.lam, args.alpha))
    if args.cache_dump:
        n = sum(args.lam)
        os.environ["KRON_CACHE_DIR"] = str(args.cache_dump)
        try:
            engine.character_table(n)
        except OverflowError as exc:
            raise UsageError(f"cannot dump the table for n = {n}: {exc}") from None
        log.info("character table for n=%d written under %s", n, args.cache_dump)
    return EXIT_OK


def cmd_lr(args) -> int:
    print(lr_coefficient(args.lam, args.mu, args.nu))
    return EXIT_OK


def cmd_pieri(args) -> int:
    for lam in pieri_expand(args.mu, args.n):
        print(format_partition(lam))
    return EXIT_OK


def _missing_text(m: int, found: list[Partition], fmt: str) -> str:
    rows = [format_partition(p) for p in found]
    if fmt == "json":
        return json.dumps({"m": m, "missing": rows}) + "\n"
    if fmt == "tsv":
        return "nu\n" + "".join(r + "\n" for r in rows)
    return "".join(r + "\n" for r in rows)


def cmd_missing(args) -> int:
    if args.m < 2:
        raise UsageError(f"missing needs m >= 2, got {args.m}")
    found = missing_partitions(args.m, budget_override=args.budget_override, jobs=args.jobs)
    sys.stdout.write(_missing_text(args.m, found, args.format))
    return EXIT_OK


def cmd_table(args) -> int:
    table = kronecker_table(args.lam, args.mu, jobs=args.jobs)
    if args.format == "json":
        print(table.to_json())
    elif args.format == "tsv":
        sys.stdout.write(table.to_tsv())
    else:
        for nu, (g, by) in table.entries.items():
            print(f"{format_partition(nu)}\t{g} ({by})")
    return EXIT_OK


def cmd_certify(args) -> int:
    if args.strategies:
        try:
            strategies = strategies_by_name(s.strip() for s in args.strategies.split(","))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        strategies = builtin_strategies()
    result = certify(args.lam, args.mu, args.nu, strategies=strategies, budget=args.budget,
                     oracle_cap=args.oracle_cap, max_depth=args.max_depth)
    if not result:
        print(f"no certificate found ({result.reason}; {result.explored} goals explored)")
        return EXIT_NEGATIVE
    text = to_json(result)
    if args.out:
        Path(args.out).write_text(text + "\n")
        print(f"certificate written to {args.out}")
    else:
        print(text)
    return EXIT_OK


def cmd_verify_cert(args) -> int:
    try:
        cert = from_json(Path(args.file).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    try:
        report = check_certificate(cert, oracle_cap=args.oracle_cap)
    except OracleCapExceeded as exc:
        raise UsageError(f"{exc}; raise --oracle-cap to check this leaf") from None
    except WitnessNotApplicable as exc:
        print(f"invalid: {exc}")
        return EXIT_NEGATIVE
    if report.ok:
        print(f"ok: {report.leaves} leaves, depth {report.depth}")
        return EXIT_OK
    for problem in report.problems:
        print(problem)
    return EXIT_NEGATIVE


def cmd_verify_paper(args) -> int:
    report = run_theorem(args.theorem, args.m_range, budget_override=args.budget_override, jobs=args.jobs)
    for line in report.lines(verbose=args.list_all):
        print(line)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


# --- parser -------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="kron",
        description="Kronecker coefficients of symmetric groups. Partitions are written "
                    "as comma lists with optional exponents, e.g. 5,3,2 or 4^4.",
    )
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    g = sub.add_parser("g", help="one Kronecker coefficient")
    for name in ("lam", "mu", "nu"):
        g.add_argument(name, type=_partition)
    g.add_argument("--method", choices=("auto", "oracle", "formula"), default="oracle",
                   help="oracle (default) sums characters; auto and formula use closed forms where they hold")
    g.set_defaults(run=cmd_g)

    c = sub.add_parser("chi", help="one character value")
    c.add_argument("lam", type=_partition)
    c.add_argument("alpha", type=_partition, help="cycle type")
    c.add_argument("--cache-dump", metavar="DIR", help="also write the full character table of this size to DIR")
    c.set_defaults(run=cmd_chi)

    lr = sub.add_parser("lr", help="Littlewood-Richardson coefficient c^lam_{mu,nu}")
    for name in ("lam", "mu", "nu"):
        lr.add_argument(name, type=_partition)
    lr.set_defaults(run=cmd_lr)

    pi = sub.add_parser("pieri", help="shapes obtained by adding a horizontal strip")
    pi.add_argument("mu", type=_partition)
    pi.add_argument("n", type=int)
    pi.set_defaults(run=cmd_pieri)

    fmt = dict(choices=("text", "json", "tsv"), default="text")

    mi = sub.add_parser("missing", help="zero classes of the tensor square of the m x m square")
    mi.add_argument("m", type=int)
    mi.add_argument("--format", **fmt)
    mi.add_argument("--jobs", type=_positive, default=1)
    mi.add_argument("--budget-override", action="store_true", help="allow m above the default budget")
    mi.set_defaults(run=cmd_missing)

    tb = sub.add_parser("table", help="g(lam, mu, nu) for every nu")
    tb.add_argument("lam", type=_partition)
    tb.add_argument("mu", type=_partition)
    tb.add_argument("--format", **fmt)
    tb.add_argument("--jobs", type=_positive, default=1)
    tb.set_defaults(run=cmd_table)

    ce = sub.add_parser("certify", help="search for a positivity certificate")
    for name in ("lam", "mu", "nu"):
        ce.add_argument(name, type=_partition)
    ce.add_argument("--budget", type=_positive, default=20000, help="goal visits before giving up")
    ce.add_argument("--strategies", help="comma list of strategy names, in order")
    ce.add_argument("--max-depth", type=_positive, default=8)
    ce.add_argument("--oracle-cap", type=_positive, default=ORACLE_CAP)
    ce.add_argument("--out", metavar="FILE")
    ce.set_defaults(run=cmd_certify)

    vc = sub.add_parser("verify-cert", help="re-check a certificate file")
    vc.add_argument("file")
    vc.add_argument("--oracle-cap", type=_positive, default=ORACLE_CAP)
    vc.set_defaults(run=cmd_verify_cert)

    vp = sub.add_parser("verify-paper", help="desk-scale check of one published statement")
    vp.add_argument("--theorem", required=True, choices=tuple(THEOREMS))
    vp.add_argument("--m-range", type=_m_range, metavar="A..B")
    vp.add_argument("--budget-override", action="store_true")
    vp.add_argument("--jobs", type=_positive, default=1)
    vp.add_argument("--all", dest="list_all", action="store_true", help="list passing instances too")
    vp.set_defaults(run=cmd_verify_paper)

    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.run(args)
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, DomainError, PartitionError, BudgetExceeded, MalformedCertificate) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CertificateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
