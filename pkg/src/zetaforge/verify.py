"""Residual checks for every identity, as report records.

Thresholds scale with the requested precision and with the certified tail
bounds of the series involved. The only fixed constant is the 10^-12
relative tolerance of the finite-difference derivative check.
"""

from __future__ import annotations

import time
from typing import Callable

import gmpy2
from gmpy2 import mpfr, mpq

from . import bernoulli, tyagiholm, zetacore
from .numkernel import decimal_digits, to_decimal
from .report import ReportRecord

SUITES = ("eq2", "eq3", "eq5", "eq9-vs-eq13a", "eq12-fd", "eq13b", "eq1-oracle")
ORACLE_GRID = ("0.5", "1.5", "2.5", "3.7", "6.3")
FD_STEP = mpq(1, 10**10)
FD_TOLERANCE = mpq(1, 10**12)


def _pow2(e: int) -> mpfr:
    return gmpy2.mul_2exp(mpfr(1, 64), e)


def _fmt(x) -> str:
    if isinstance(x, type(mpq(0))):
        return str(x)
    return to_decimal(mpfr(x), 6)


class _Clock:
    def __enter__(self):
        self._t0 = time.perf_counter_ns()
        return self

    def __exit__(self, *exc):
        self.us = max(1, (time.perf_counter_ns() - self._t0) // 1000)
        return False


def _record(name, residual, threshold, clock, terms=0, value=None) -> ReportRecord:
    passed = bool(abs(residual) <= threshold)
    shown = value if value is not None else _fmt(residual)
    return ReportRecord(name, shown, _fmt(threshold), terms, clock.us, passed)


def check_eq2(prec: int, max_m: int) -> list[ReportRecord]:
    with _Clock() as c:
        r = tyagiholm.log2_identity_residual(prec)
    threshold = r.tail_bound + _pow2(-prec + 8)
    return [_record("eq2", r.value, threshold, c, r.terms_used)]


def check_eq3(prec: int, max_m: int) -> list[ReportRecord]:
    out = []
    for m in range(1, max_m + 1):
        with _Clock() as c:
            series = tyagiholm.zeta_even_series(m, prec)
            closed = bernoulli.zeta_even_closed(m, prec)
            with gmpy2.context(precision=prec + 16):
                rel = abs(series - closed) / closed
        out.append(_record(f"eq3[m={m}]", rel, _pow2(-prec + 16), c))
    return out


def check_eq5(prec: int, max_m: int) -> list[ReportRecord]:
    out = []
    for m in range(1, max_m + 1):
        with _Clock() as c:
            r = bernoulli.eq5_residual(m)
        out.append(ReportRecord(f"eq5[m={m}]", str(r), "0", m + 1, c.us, r == 0))
    return out


def check_eq9_vs_eq13a(prec: int, max_m: int) -> list[ReportRecord]:
    out = []
    for m in range(1, max_m + 1):
        with _Clock() as c:
            a = tyagiholm.zeta_odd_series(m, prec, tyagiholm.EQ9)
            b = tyagiholm.zeta_odd_series(m, prec, tyagiholm.EQ13A)
            with gmpy2.context(precision=prec + 16):
                diff = a.value - b.value
        threshold = a.tail_bound + b.tail_bound + _pow2(-prec + 16)
        out.append(_record(f"eq9-vs-eq13a[m={m}]", diff, threshold, c, a.terms_used))
    return out


def check_eq12_fd(prec: int, max_m: int) -> list[ReportRecord]:
    out = []
    for n in range(1, max_m + 1):
        with _Clock() as c:
            closed = zetacore.zeta_prime_neg_even(n, prec)
            fd = zetacore.zeta_prime_fd(-2 * n, prec, FD_STEP)
            with gmpy2.context(precision=prec + 16):
                diff = fd - closed
        threshold = mpfr(FD_TOLERANCE, 64) * max(mpfr(1, 64), abs(mpfr(closed, 64)))
        out.append(_record(f"eq12-fd[n={n}]", diff, threshold, c))
    return out


def check_eq13b(prec: int, max_m: int) -> list[ReportRecord]:
    out = []
    for m in range(1, max_m + 1):
        with _Clock() as c:
            r = tyagiholm.reordered_identity_residual(m, prec)
        threshold = r.tail_bound + _pow2(-prec + 16)
        out.append(_record(f"eq13b[m={m}]", r.value, threshold, c, r.terms_used))
    return out


def check_eq1_oracle(prec: int, max_m: int) -> list[ReportRecord]:
    out = []
    for s in ORACLE_GRID:
        with _Clock() as c:
            r = tyagiholm.tyagi_holm_general(s, prec)
            ref = zetacore.zeta_real(s, prec + 32)
            with gmpy2.context(precision=prec + 16):
                diff = r.value - ref
        threshold = r.tail_bound + _pow2(-prec + 28)
        out.append(_record(f"eq1-oracle[s={s}]", diff, threshold, c, r.terms_used))
    return out


CHECKS: dict[str, Callable[[int, int], list[ReportRecord]]] = {
    "eq2": check_eq2,
    "eq3": check_eq3,
    "eq5": check_eq5,
    "eq9-vs-eq13a": check_eq9_vs_eq13a,
    "eq12-fd": check_eq12_fd,
    "eq13b": check_eq13b,
    "eq1-oracle": check_eq1_oracle,
}


def run_suites(suites, prec: int, max_m: int) -> list[ReportRecord]:
    unknown = [s for s in suites if s not in CHECKS]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    records: list[ReportRecord] = []
    for name in suites:
        records.extend(CHECKS[name](prec, max_m))
    return records


def value_string(x: mpfr, prec: int) -> str:
    return to_decimal(x, decimal_digits(prec))
