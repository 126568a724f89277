"""Command-line front end.

    zetaforge compute --s 1.5 --prec-bits 128 --strategy accelerated
    zetaforge compute --even-m 1 --prec-bits 64
    zetaforge bernoulli --index 12 --method both
    zetaforge verify --suite eq5 --max-m 100
    zetaforge bench --max-index 200 --methods both --format csv

Exit status: 0 success / all checks pass, 1 a verification failed,
2 usage or domain error (with a one-line JSON reason on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Sequence

from gmpy2 import mpq

from . import bernoulli, tyagiholm
from .errors import DomainError, PoleError, ZetaForgeError
from .numkernel import as_exact, to_decimal
from .report import FORMATS, BenchRow, ReportRecord, render
from .verify import SUITES, run_suites, value_string

MIN_PREC, MAX_PREC = 8, 16384
MAX_BENCH_INDEX = 2000


class UsageError(Exception):
    kind = "usage"


@dataclass
class CommandRequest:
    subcommand: str
    prec_bits: int = 128
    strategy: str = tyagiholm.ACCELERATED
    fmt: str = "plain"
    s: str | None = None
    odd_m: int | None = None
    even_m: int | None = None
    form: str = tyagiholm.EQ13A
    epsilon: str | None = None
    max_terms: int | None = None
    indices: list[int] = field(default_factory=list)
    method: str = "euler"
    suites: list[str] = field(default_factory=list)
    max_m: int = 10
    max_index: int = 0

    def __post_init__(self):
        if not MIN_PREC <= self.prec_bits <= MAX_PREC:
            raise UsageError(f"--prec-bits must lie in [{MIN_PREC}, {MAX_PREC}]")

    def eval_strategy(self) -> tyagiholm.EvalStrategy:
        kwargs = {"epsilon": self.epsilon}
        if self.max_terms is not None:
            kwargs["max_terms"] = self.max_terms
        return tyagiholm.EvalStrategy(self.strategy, **kwargs)


def _elapsed_us(t0: int) -> int:
    return max(1, (time.perf_counter_ns() - t0) // 1000)


def _series_record(name: str, result: tyagiholm.SeriesResult, prec: int, t0: int) -> ReportRecord:
    return ReportRecord(
        name,
        value_string(result.value, prec),
        to_decimal(result.tail_bound, 6),
        result.terms_used,
        _elapsed_us(t0),
    )


def run_compute(req: CommandRequest) -> ReportRecord:
    prec = req.prec_bits
    t0 = time.perf_counter_ns()
    given = [x is not None for x in (req.s, req.odd_m, req.even_m)]
    if sum(given) != 1:
        raise UsageError("give exactly one of --s, --odd-m, --even-m")
    odd_m, even_m = req.odd_m, req.even_m
    if req.s is not None:
        s = as_exact(req.s)
        if s.denominator == 1:
            k = int(s)
            if k == 1:
                raise PoleError("pole at s=1")
            if k <= 0:
                raise DomainError(f"series needs s > 0, got s={k}")
            if k % 2 == 0:
                even_m = k // 2
            else:
                odd_m = (k - 1) // 2
        else:
            r = tyagiholm.tyagi_holm_general(s, prec, req.eval_strategy())
            return _series_record(f"zeta({req.s})", r, prec, t0)
    if even_m is not None:
        if even_m < 1:
            raise DomainError(f"--even-m must be >= 1, got {even_m}")
        v = tyagiholm.zeta_even_series(even_m, prec)
        return ReportRecord(f"zeta({2 * even_m})", value_string(v, prec), "0", even_m, _elapsed_us(t0))
    if odd_m < 1:
        raise DomainError(f"--odd-m must be >= 1, got {odd_m}")
    r = tyagiholm.zeta_odd_series(odd_m, prec, req.form, req.eval_strategy())
    return _series_record(f"zeta({2 * odd_m + 1})", r, prec, t0)


def run_bernoulli(req: CommandRequest) -> list[ReportRecord]:
    table = bernoulli.BernoulliTable()
    records = []
    for k in req.indices:
        if k < 0:
            raise UsageError(f"negative Bernoulli index {k}")
        t0 = time.perf_counter_ns()
        if k % 2 and k > 1:
            print(f"note: B_{k} is zero for odd index >= 3", file=sys.stderr)
            records.append(ReportRecord(f"B_{k}", "0", "0", 0, _elapsed_us(t0)))
            continue
        if req.method == "both":
            if k == 1:
                raise UsageError("B_1 has no even-index recursion to compare against")
            e = bernoulli.bernoulli(k, bernoulli.EULER, table)
            m = bernoulli.bernoulli(k, bernoulli.MILGRAM, table)
            records.append(ReportRecord(f"B_{k}", str(e), "0", k // 2 + 1, _elapsed_us(t0), e == m))
        else:
            v = bernoulli.bernoulli(k, req.method, table)
            records.append(ReportRecord(f"B_{k}", str(v), "0", k // 2 + 1, _elapsed_us(t0)))
    return records


def run_verify(req: CommandRequest) -> list[ReportRecord]:
    suites = req.suites or list(SUITES)
    bad = [s for s in suites if s not in SUITES]
    if bad:
        raise UsageError(f"unknown suite {bad[0]!r}; choose from {', '.join(SUITES)}")
    return run_suites(suites, req.prec_bits, req.max_m)


def run_bench(req: CommandRequest) -> list[BenchRow]:
    if req.max_index < 0 or req.max_index > MAX_BENCH_INDEX:
        raise UsageError(f"--max-index must lie in [0, {MAX_BENCH_INDEX}]")
    methods = list(bernoulli.METHODS) if req.method == "both" else [req.method]
    rows: list[BenchRow] = []
    values: dict[str, dict[int, mpq]] = {}
    for method in methods:
        table = bernoulli.BernoulliTable()  # cold table per method
        values[method] = {}
        cumulative = 0
        for k in range(2, req.max_index + 1, 2):
            t0 = time.perf_counter_ns()
            v = bernoulli.bernoulli(k, method, table)
            us = _elapsed_us(t0)
            cumulative += us
            values[method][k] = v
            rows.append(
                BenchRow(k, method, us, int(abs(v.numerator)).bit_length(), int(v.denominator).bit_length(), cumulative)
            )
    if len(methods) == 2:
        rows = [
            BenchRow(r.index, r.method, r.elapsed_us, r.num_bits, r.den_bits, r.cumulative_us,
                     values[bernoulli.EULER][r.index] == values[bernoulli.MILGRAM][r.index])
            for r in rows
        ]
    return rows


def _parse_index_range(text: str) -> list[int]:
    lo, _, hi = text.partition(":")
    if not hi:
        raise argparse.ArgumentTypeError("range must look like A:B")
    lo_i, hi_i = int(lo), int(hi)
    return [k for k in range(lo_i, hi_i + 1) if k % 2 == 0]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec-bits", type=int, default=128)
    common.add_argument("--format", dest="fmt", choices=FORMATS, default="plain")
    common.add_argument("--out", help="write the report to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="zetaforge", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("compute", parents=[common], help="evaluate zeta at a point")
    p.add_argument("--s", help="real argument (exact decimal or fraction)")
    p.add_argument("--odd-m", type=int, help="zeta(2m+1)")
    p.add_argument("--even-m", type=int, help="zeta(2m)")
    p.add_argument("--strategy", choices=(tyagiholm.ACCELERATED, tyagiholm.DIRECT), default=tyagiholm.ACCELERATED)
    p.add_argument("--form", choices=(tyagiholm.EQ9, tyagiholm.EQ13A), default=tyagiholm.EQ13A)
    p.add_argument("--epsilon")
    p.add_argument("--max-terms", type=int)

    p = sub.add_parser("bernoulli", parents=[common], help="exact Bernoulli numbers")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--index", type=int)
    g.add_argument("--range", dest="index_range", type=_parse_index_range, help="A:B, even indices")
    p.add_argument("--method", choices=("euler", "milgram", "both"), default="euler")

    p = sub.add_parser("verify", parents=[common], help="residual checks of the identities")
    p.add_argument("--suite", action="append", default=[], help=f"one of {', '.join(SUITES)}; repeatable")
    p.add_argument("--max-m", type=int, default=10)

    p = sub.add_parser("bench", parents=[common], help="time both Bernoulli recursions")
    p.add_argument("--max-index", type=int, default=200)
    p.add_argument("--methods", choices=("euler", "milgram", "both"), default="both")
    return parser


def _request(ns: argparse.Namespace) -> CommandRequest:
    req = CommandRequest(ns.subcommand, prec_bits=ns.prec_bits, fmt=ns.fmt)
    if ns.subcommand == "compute":
        req.s, req.odd_m, req.even_m = ns.s, ns.odd_m, ns.even_m
        req.strategy, req.form = ns.strategy, ns.form
        req.epsilon, req.max_terms = ns.epsilon, ns.max_terms
    elif ns.subcommand == "bernoulli":
        req.indices = ns.index_range if ns.index_range is not None else [0 if ns.index is None else ns.index]
        req.method = ns.method
    elif ns.subcommand == "verify":
        req.suites, req.max_m = ns.suite, ns.max_m
    else:
        req.max_index, req.method = ns.max_index, ns.methods
    return req


def _fail(kind: str, reason: str) -> int:
    print(json.dumps({"error": kind, "reason": reason}), file=sys.stderr)
    return 2


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        req = _request(ns)
        if req.subcommand == "compute":
            rows = [run_compute(req)]
        elif req.subcommand == "bernoulli":
            rows = run_bernoulli(req)
        elif req.subcommand == "verify":
            rows = run_verify(req)
        else:
            rows = run_bench(req)
    except (ZetaForgeError, UsageError) as exc:
        return _fail(exc.kind, str(exc))
    except ValueError as exc:
        return _fail("usage", str(exc))

    text = render(rows, req.fmt)
    if ns.out:
        with open(ns.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if req.subcommand == "verify" and not all(r.passed for r in rows):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
