"""Zeta values from a gamma-weighted series in shifted zeta values, and its integer-argument limits.

The general series, for real s > 0,

    zeta(s) = pi^(s-1) sin(pi s/2) / (1 - 2^(1-s))
              * sum_{n>=1} (2 - 2^(s-2n)) Gamma(2n-s+1) zeta(2n-s+1) / Gamma(2n+2),

specializes at s = 1 to a log 2 identity, at s = 2m to a finite formula in
zeta(1-2n), and at s = 2m+1 to two equivalent odd-zeta formulas ("eq9", using
zeta'(-2n), and "eq13a", recursive in lower odd zeta values). Reordering the
latter gives the "eq13b" identity for an infinite series of even zeta values.

Every infinite sum is returned as a :class:`SeriesResult` carrying a certified
truncation bound. The accelerated strategy splits zeta(x) = 1 + (zeta(x) - 1)
and sums the ``1`` part in closed form, leaving a geometrically convergent
remainder.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass, field
from typing import Literal

import gmpy2
from gmpy2 import mpfr, mpq

from .bernoulli import zeta_even_closed, zeta_neg_odd_exact
from .errors import DomainError, NearIntegerError, PoleError
from .numkernel import (
    LogLinearValue,
    RationalPolynomial,
    RealLike,
    as_exact,
    check_prec,
    const_log,
    factorial,
    gamma_real,
    pow2,
    precision,
    rational_log_integral,
    tanh_sinh_quadrature,
    working_prec,
)
from .zetacore import zeta_minus_one, zeta_prime_neg_even, zeta_real

DIRECT = "direct"
ACCELERATED = "accelerated"
EQ9 = "eq9"
EQ13A = "eq13a"
NEAR_INTEGER_GUARD = mpq(1, 1000)
# zeta(2n) above this index comes from a short direct sum instead of B_{2n}
CLOSED_FORM_LIMIT = 150
DEFAULT_MAX_TERMS = 10**6


def max_terms_from_env() -> int:
    raw = os.environ.get("ZETAFORGE_MAX_TERMS")
    if not raw:
        return DEFAULT_MAX_TERMS
    value = int(float(raw))
    if value < 1:
        raise ValueError("ZETAFORGE_MAX_TERMS must be positive")
    return value


@dataclass(frozen=True)
class EvalStrategy:
    """How to sum an infinite series.

    ``epsilon`` defaults to 2^(-prec) of the evaluation it is passed to;
    ``max_terms`` defaults to ZETAFORGE_MAX_TERMS (10^6 when unset).
    """

    tag: Literal["direct", "accelerated"] = ACCELERATED
    epsilon: RealLike | None = None
    max_terms: int = field(default_factory=max_terms_from_env)

    def __post_init__(self):
        if self.tag not in (DIRECT, ACCELERATED):
            raise ValueError(f"unknown strategy {self.tag!r}")
        if self.epsilon is not None and as_exact(self.epsilon) <= 0:
            raise ValueError("epsilon must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be positive")

    def eps(self, prec: int) -> mpfr:
        if self.epsilon is None:
            return gmpy2.mul_2exp(mpfr(1, 64), -prec)
        return mpfr(as_exact(self.epsilon), 64)


OddZetaForm = Literal["eq9", "eq13a"]


@dataclass(frozen=True)
class SeriesResult:
    """Value of a series-based evaluation and its certified error bound.

    ``tail_bound`` is an absolute bound on the truncation error of the
    infinite part, widened by a rounding allowance that includes the final
    rounding of ``value`` to the requested precision.
    """

    value: mpfr
    terms_used: int
    tail_bound: mpfr
    method: str
    baseline: LogLinearValue | None = None


def _up(x) -> mpfr:
    """Round a nonnegative bound to 64 bits, nudged upward."""
    with precision(64):
        return abs(mpfr(x)) * (1 + gmpy2.mul_2exp(mpfr(1), -50))


def _zeta_upper(x) -> mpfr:
    """Upper bound for zeta(x), x > 1: 1 + 2^-x (1 + 2/(x-1))."""
    with precision(64):
        xm = mpfr(x)
        return _up(1 + mpfr(2) ** -xm * (1 + 2 / (xm - 1)))


def _delta_upper(x) -> mpfr:
    """Upper bound for zeta(x) - 1, x > 1."""
    with precision(64):
        xm = mpfr(x)
        return _up(mpfr(2) ** -xm * (1 + 2 / (xm - 1)))


def _zeta_even(n: int, wp: int) -> mpfr:
    if n <= CLOSED_FORM_LIMIT:
        return zeta_even_closed(n, wp)
    with precision(wp):
        return 1 + zeta_minus_one(2 * n, wp)


def _rounding(terms: int, wp: int, scale) -> mpfr:
    return _up(gmpy2.mul_2exp(mpfr(terms + 8, 64) * _up(scale), -wp + 4))


def _finish(value, prec: int, bound, terms: int, method: str, baseline=None) -> SeriesResult:
    """Round once to ``prec`` bits; the bound absorbs that final rounding."""
    out = mpfr(value, prec)
    total = _up(bound) + _up(gmpy2.mul_2exp(_up(value), -prec))
    return SeriesResult(out, terms, _up(total), method, baseline)


def baseline_g(m: int) -> LogLinearValue:
    """Exact sum of Gamma(2n)/Gamma(2n+2m+2) over n >= 1.

    Equal to (1/Gamma(2m+2)) * integral_0^1 (1-t)^(2m) t/(1+t) dt.
    """
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    one_minus_t = RationalPolynomial([1, -1])
    poly = one_minus_t ** (2 * m) * RationalPolynomial.monomial(1)
    return rational_log_integral(poly, 1, 1) * mpq(1, factorial(2 * m + 1))


# ---------------------------------------------------------------------------
# general real s


def _check_general(s: mpq) -> None:
    if s == 1:
        raise PoleError("pole at s=1")
    if s <= 0:
        raise DomainError(f"series needs s > 0, got {s}")
    nearest = gmpy2.f_div(2 * s.numerator + s.denominator, 2 * s.denominator)
    if abs(s - nearest) < NEAR_INTEGER_GUARD:
        raise NearIntegerError(
            f"s={float(s)} is within {float(NEAR_INTEGER_GUARD)} of the integer {int(nearest)}; "
            "use the integer-argument evaluations"
        )


def _general_prefactor(s: mpq, wp: int) -> mpfr:
    """pi^(s-1) sin(pi s/2) / (1 - 2^(1-s))."""
    r = s - 4 * gmpy2.f_div(s.numerator, 4 * s.denominator)
    with precision(wp):
        sm = mpfr(s)
        pi = gmpy2.const_pi()
        sn = gmpy2.sin(pi * mpfr(r) / 2)
        return pi ** (sm - 1) * sn / (1 - mpfr(2) ** (1 - sm))


def _beta_tail(s: mpq, n0: int, wp: int) -> mpfr:
    """sum_{n>n0} (2 - 2^(s-2n)) Gamma(2n-s+1)/Gamma(2n+2) by quadrature.

    With F(x) = sum_{n>n0} x^(2n) Gamma(2n-s+1)/Gamma(2n+2)
              = (1/Gamma(s+1)) int_0^1 t^(-s) (1-t)^s (xt)^(2n0+2) / (1 - x^2 t^2) dt,
    the sum is 2 F(1) - 2^s F(1/2).
    """
    with precision(wp):
        sm = mpfr(s)
        e = 2 * n0 + 2 - sm
        s1 = sm - 1
        quarter_pow = mpfr(2) ** (-(2 * n0 + 2))

        def at_one(t, u):
            return t**e * u**s1 / (1 + t)

        def at_half(t, u):
            return t**e * u**sm * quarter_pow / (1 - t * t / 4)

    f1 = tanh_sinh_quadrature(at_one, wp, complement=True)
    fh = tanh_sinh_quadrature(at_half, wp, complement=True)
    g = gamma_real(s + 1, wp)
    with precision(wp):
        return (2 * f1 - mpfr(2) ** mpfr(s) * fh) / g


def tyagi_holm_general(
    s: RealLike, prec: int, strategy: EvalStrategy | None = None
) -> SeriesResult:
    """zeta(s) for real, non-integer s > 0 from the gamma-weighted series.

    Raises PoleError at s=1, DomainError for s <= 0 and NearIntegerError
    within 10^-3 of an integer.
    """
    check_prec(prec)
    strategy = strategy or EvalStrategy()
    s = as_exact(s)
    _check_general(s)
    sf = float(s)
    wp = working_prec(prec, 1 << 16) + 16 + math.ceil(sf)
    eps = strategy.eps(prec)

    pref = _general_prefactor(s, wp)
    abs_pref = _up(pref)
    with precision(wp):
        sm = mpfr(s)
        two_s = mpfr(2) ** sm
        f = gamma_real(3 - s, wp) / 6  # Gamma(3-s)/Gamma(4)
        acc = mpfr(0)
        n0 = math.ceil((sf + 1) / 2) + 1

        def advance(n, f):
            return f * (2 * n - sm + 1) * (2 * n - sm + 2) / ((2 * n + 2) * (2 * n + 3))

        if strategy.tag == DIRECT:
            n = 0
            tail = None
            while n < strategy.max_terms:
                n += 1
                term = (2 - two_s * pow2(-2 * n)) * f * zeta_real(2 * n - s + 1, wp)
                acc += term
                f = advance(n, f)
                if 2 * n + 3 - sf > 1:
                    # sum_{k>n} Gamma(2k-s+1)/Gamma(2k+2) <= Gamma(2n+3-s)/(s Gamma(2n+3))
                    tail = _up(2 * _zeta_upper(2 * n + 3 - s) * f * (2 * n + 3) / sm)
                    if abs(term) * abs_pref < eps and tail * abs_pref < eps:
                        break
            if tail is None:
                tail = mpfr("inf")
            bound = abs_pref * tail + _rounding(n, wp, abs_pref * (abs(acc) + 1))
            return _finish(pref * acc, prec, bound, n, DIRECT)

        for n in range(1, n0 + 1):
            acc += (2 - two_s * pow2(-2 * n)) * f * zeta_real(2 * n - s + 1, wp)
            f = advance(n, f)
        acc += _beta_tail(s, n0, wp)
        n = n0
        tail = None
        while n < max(strategy.max_terms, n0 + 1):
            n += 1
            x = 2 * n - s + 1
            acc += (2 - two_s * pow2(-2 * n)) * f * zeta_minus_one(x, wp)
            f = advance(n, f)
            tail = _up(2 * f * _delta_upper(x + 2) * 4 / 3)
            if tail * abs_pref < eps:
                break
        bound = abs_pref * tail + _rounding(n, wp, abs_pref * (abs(acc) + 1))
        return _finish(pref * acc, prec, bound, n, ACCELERATED)


# ---------------------------------------------------------------------------
# s = 1


def log2_identity_residual(prec: int, strategy: EvalStrategy | None = None) -> SeriesResult:
    """sum_{n>=1} (1 - 4^-n) zeta(2n) / (n (2n+1)) minus log 2.

    The accelerated route subtracts sum 1/(n(2n+1)) = 2 - 2 log 2, leaving
    summands of size O(4^-n).
    """
    check_prec(prec)
    strategy = strategy or EvalStrategy()
    eps = strategy.eps(prec)
    wp = working_prec(prec, 1 << 20) + 8
    acc = mpfr(0, wp)
    n = 0
    tail = mpfr("inf")
    with precision(wp):
        if strategy.tag == ACCELERATED:
            baseline = LogLinearValue(2, -2, 0)
            while n < strategy.max_terms:
                n += 1
                z = _zeta_even(n, wp)
                acc += ((1 - pow2(-2 * n)) * z - 1) / (n * (2 * n + 1))
                # |summand_k| <= 3 * 4^-k / (k (2k+1))
                tail = _up(mpfr(pow2(-2 * n)) / ((n + 1) * (2 * n + 3)))
                if tail < eps:
                    break
            value = acc + baseline.to_big(wp) - const_log(2, wp)
        else:
            baseline = None
            while n < strategy.max_terms:
                n += 1
                z = _zeta_even(n, wp)
                acc += (1 - pow2(-2 * n)) * z / (n * (2 * n + 1))
                tail = _up(_zeta_upper(2 * n + 2) / (2 * n))
                if tail < eps:
                    break
            value = acc - const_log(2, wp)
    bound = tail + _rounding(n, wp, 2)
    return _finish(value, prec, bound, n, strategy.tag, baseline)


# ---------------------------------------------------------------------------
# s = 2m


def zeta_even_bracket(m: int) -> mpq:
    """Exact rational r with zeta(2m) = r * pi^(2m), assembled from zeta(1-2n)."""
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    bracket = mpq(-1, factorial(2 * m + 1))
    for n in range(1, m):
        z = zeta_neg_odd_exact(m - n)  # zeta(2n - 2m + 1)
        bracket += (2 - pow2(2 * m - 2 * n)) * z / (factorial(2 * n + 1) * factorial(2 * m - 2 * n - 1))
    return (-1) ** m * bracket / (2 * (1 - pow2(1 - 2 * m)))


def zeta_even_series(m: int, prec: int) -> mpfr:
    """zeta(2m) from the finite series in zeta(1-2n); only pi^(2m) is inexact."""
    check_prec(prec)
    coeff = zeta_even_bracket(m)
    with precision(working_prec(prec, 2 * m + 2)):
        return mpfr(coeff * gmpy2.const_pi() ** (2 * m), prec)


# ---------------------------------------------------------------------------
# s = 2m + 1


def _odd_infinite_series(m: int, wp: int, strategy: EvalStrategy, eps) -> SeriesResult:
    """sum_{n>=1} (2 - 2^(1-2n)) Gamma(2n) zeta(2n) / Gamma(2m+2n+2) at ``wp`` bits."""
    with precision(wp):
        r = mpfr(1) / factorial(2 * m + 3)  # Gamma(2)/Gamma(2m+4)
        acc = mpfr(0)
        n = 0
        tail = mpfr("inf")
        baseline = None

        def advance(n, r):
            return r * (2 * n) * (2 * n + 1) / ((2 * n + 2 * m + 2) * (2 * n + 2 * m + 3))

        if strategy.tag == DIRECT:
            while n < strategy.max_terms:
                n += 1
                acc += (2 - pow2(1 - 2 * n)) * r * _zeta_even(n, wp)
                r = advance(n, r)
                # sum_{k>n} Gamma(2k)/Gamma(2m+2k+2) <= Gamma(2n+2)/((2m+1) Gamma(2n+2m+3))
                tail = _up(2 * _zeta_upper(2 * n + 2) * r * (2 * n + 2 * m + 3) / (2 * m + 1))
                if tail < eps:
                    break
        else:
            baseline = baseline_g(m) * 2
            while n < strategy.max_terms:
                n += 1
                acc += r * ((2 - pow2(1 - 2 * n)) * _zeta_even(n, wp) - 2)
                r = advance(n, r)
                # |(2 - 2^(1-2k)) zeta(2k) - 2| <= 6 * 4^-k, ratio 1/4 per step
                tail = _up(8 * r * pow2(-2 * n - 2))
                if tail < eps:
                    break
            acc += baseline.to_big(wp)
        bound = tail + _rounding(n, wp, 1)
        return SeriesResult(acc, n, _up(bound), strategy.tag, baseline)


class _OddZetaMemo:
    def __init__(self):
        self._values: dict[tuple, SeriesResult] = {}
        self._lock = threading.Lock()

    def get(self, key):
        return self._values.get(key)

    def put(self, key, value):
        with self._lock:
            return self._values.setdefault(key, value)


_ODD_MEMO = _OddZetaMemo()


def _odd_wp(m: int, prec: int) -> int:
    return working_prec(prec, 1 << 16) + 8 + math.ceil(2 * m * math.log2(math.pi))


def zeta_odd_series(
    m: int,
    prec: int,
    form: OddZetaForm = EQ13A,
    strategy: EvalStrategy | None = None,
) -> SeriesResult:
    """zeta(2m+1) from the odd-argument formulas.

    ``form="eq9"`` feeds zeta'(2n-2m) into the finite sum; ``form="eq13a"``
    feeds the lower odd values zeta(2m-2n+1), computed recursively by this
    function and memoized.
    """
    check_prec(prec)
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    if form not in (EQ9, EQ13A):
        raise ValueError(f"unknown form {form!r}")
    strategy = strategy or EvalStrategy()
    key = (m, prec, form, strategy)
    hit = _ODD_MEMO.get(key)
    if hit is not None:
        return hit

    wp = _odd_wp(m, prec)
    with precision(64):
        pi64 = gmpy2.const_pi()
        abs_pref = _up(pi64 ** (2 * m) / (1 - mpfr(pow2(-2 * m))))
    eps = gmpy2.mul_2exp(strategy.eps(prec), -math.ceil(2 * m * math.log2(math.pi)) - 1)
    series = _odd_infinite_series(m, wp, strategy, eps)
    extra_bound = mpfr(0, 64)

    with precision(wp):
        pi = gmpy2.const_pi()
        scale = 1 / (1 - mpfr(pow2(-2 * m)))
        pref = (-1) ** m * pi ** (2 * m) * scale
        bracket = -const_log(2, wp) / factorial(2 * m + 1) + series.value
        if form == EQ9:
            for n in range(1, m):
                zp = zeta_prime_neg_even(m - n, wp)  # zeta'(2n - 2m)
                bracket += (2 - pow2(1 + 2 * m - 2 * n)) * zp / (factorial(2 * n + 1) * factorial(2 * m - 2 * n))
            value = pref * bracket
        else:
            value = pref * bracket
            finite = mpfr(0)
            for n in range(1, m):
                lower = zeta_odd_series(m - n, wp, EQ13A, EvalStrategy(ACCELERATED, max_terms=strategy.max_terms))
                coef = (pow2(2 * n - 2 * m) - 1) * (-pi * pi) ** n / factorial(2 * n + 1)
                finite += coef * lower.value
                extra_bound += _up(coef) * lower.tail_bound
            value += scale * finite
            extra_bound = _up(extra_bound * _up(scale))

    bound = abs_pref * series.tail_bound + extra_bound + _rounding(series.terms_used, wp, abs_pref * 4)
    result = _finish(value, prec, bound, series.terms_used, series.method, series.baseline)
    return _ODD_MEMO.put(key, result)


def reordered_identity_residual(
    m: int, prec: int, strategy: EvalStrategy | None = None
) -> SeriesResult:
    """Left minus right side of the reordered odd-zeta identity (eq13b).

    LHS = sum_{n>=0} (2^(-2n-2) - 1) Gamma(2n+2) zeta(2n+2) / Gamma(2m+2n+4)
        = -(1/2) * sum_{k>=1} (2 - 2^(1-2k)) Gamma(2k) zeta(2k) / Gamma(2m+2k+2),
    RHS = -(1/2) sum_{n<m} (2^(-2n-2) - 1) (-1)^n zeta(2n+3) / (Gamma(2m-2n) pi^(2n+2))
          - log 2 / (2 Gamma(2m+2)),
    with the RHS odd zeta values taken from the Euler-Maclaurin oracle.
    """
    check_prec(prec)
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    strategy = strategy or EvalStrategy()
    wp = working_prec(prec, 1 << 16) + 8
    series = _odd_infinite_series(m, wp, strategy, gmpy2.mul_2exp(strategy.eps(prec), 1))
    with precision(wp):
        lhs = -series.value / 2
        pi = gmpy2.const_pi()
        rhs = mpfr(0)
        for n in range(m):
            z = zeta_real(2 * n + 3, wp)
            rhs += (pow2(-2 * n - 2) - 1) * (-1) ** n * z / (factorial(2 * m - 2 * n - 1) * pi ** (2 * n + 2))
        rhs = -rhs / 2 - const_log(2, wp) / (2 * factorial(2 * m + 1))
        residual = lhs - rhs
    baseline = None if series.baseline is None else series.baseline * mpq(-1, 2)
    bound = series.tail_bound / 2 + _rounding(series.terms_used + m, wp, 1)
    return _finish(residual, prec, bound, series.terms_used, series.method, baseline)
