"""Exact and arbitrary-precision scalar plumbing.

Exact integers are Python ``int``/``gmpy2.mpz``, exact rationals are
``gmpy2.mpq`` (always reduced, positive denominator) and arbitrary-precision
reals are ``gmpy2.mpfr`` values carrying their own precision in bits.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from decimal import Decimal
from fractions import Fraction
from typing import Iterator, Union

import gmpy2
from gmpy2 import mpfr, mpq, mpz

from ..errors import DomainError

BigReal = mpfr
ExactRational = mpq
RealLike = Union[int, float, str, Fraction, Decimal, mpz, mpq, mpfr]

MIN_PREC = 8
MAX_PREC = 1 << 20
FACTORIAL_LIMIT = 1_000_000
GUARD_BITS = 32


def check_prec(prec: int) -> int:
    if not isinstance(prec, int) or isinstance(prec, bool):
        raise TypeError(f"precision must be an int, got {type(prec).__name__}")
    if not MIN_PREC <= prec <= MAX_PREC:
        raise DomainError(f"precision {prec} outside [{MIN_PREC}, {MAX_PREC}]")
    return prec


def working_prec(prec: int, work: int = 1) -> int:
    """Internal precision for a result wanted at ``prec`` bits.

    ``work`` is the number of elementary operations feeding the result.
    """
    return prec + GUARD_BITS + max(0, math.ceil(math.log2(max(work, 1))))


@contextmanager
def precision(bits: int) -> Iterator[gmpy2.context]:
    """Thread-local gmpy2 context at ``bits`` of precision, round-to-nearest."""
    with gmpy2.context(precision=bits) as ctx:
        yield ctx


def round_to(x, prec: int) -> mpfr:
    """Round once to ``prec`` bits."""
    return mpfr(x, prec)


def as_exact(x: RealLike) -> mpq:
    """Exact rational image of a real input.

    Decimal strings are read exactly ("3.7" is 37/10, not the nearest double).
    """
    if isinstance(x, mpq):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a real number")
    if isinstance(x, (int, mpz, Fraction)):
        return mpq(x)
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    if isinstance(x, Decimal):
        return mpq(Fraction(x))
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DomainError(f"non-finite input {x!r}")
        return mpq(x)
    if isinstance(x, type(mpfr(0))):
        if not gmpy2.is_finite(x):
            raise DomainError(f"non-finite input {x!r}")
        return mpq(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a real number")


def to_big(x: RealLike, prec: int) -> mpfr:
    """Faithful (in fact correctly rounded) conversion to ``prec`` bits."""
    check_prec(prec)
    if isinstance(x, type(mpfr(0))):
        return mpfr(x, prec)
    return mpfr(as_exact(x), prec)


def factorial(k: int) -> int:
    """Exact ``k!``; Gamma(k) for integer k >= 1 is ``factorial(k - 1)``."""
    k = int(k)
    if k < 0:
        raise DomainError(f"factorial of negative integer {k}")
    if k > FACTORIAL_LIMIT:
        raise DomainError(f"factorial argument {k} exceeds limit {FACTORIAL_LIMIT}")
    return int(gmpy2.fac(k))


def const_pi(prec: int) -> mpfr:
    check_prec(prec)
    return gmpy2.const_pi(prec)


def const_log(k: int, prec: int) -> mpfr:
    """log 2 or log 3 to within 2^(-prec+2)."""
    check_prec(prec)
    if k == 2:
        return gmpy2.const_log2(prec)
    if k == 3:
        with precision(prec):
            return gmpy2.log(mpfr(3))
    raise DomainError(f"const_log supports k in {{2, 3}}, got {k}")


def pow2(e: int) -> mpq:
    """Exact 2**e for any integer e."""
    return mpq(mpz(1) << e) if e >= 0 else mpq(1, mpz(1) << -e)


def ulp_bound(prec: int, scale=1) -> mpfr:
    """2^(-prec) * |scale| as a 64-bit mpfr (rounded away from zero)."""
    with precision(64):
        return gmpy2.mul_2exp(abs(mpfr(scale)) * (1 + mpfr(2) ** -60), -prec)


def to_decimal(x: mpfr, digits: int) -> str:
    """Scientific decimal string with ``digits`` significant digits.

    ``mpfr(to_decimal(x, d), x.precision) == x`` whenever
    ``d >= ceil(x.precision * log10(2)) + 1``.
    """
    if gmpy2.is_zero(x):
        return "0"
    if not gmpy2.is_finite(x):
        return str(x)
    mant, exp, _ = x.digits(10, digits)
    sign = ""
    if mant.startswith("-"):
        sign, mant = "-", mant[1:]
    exp10 = exp - 1
    body = mant[0] + ("." + mant[1:] if len(mant) > 1 else "")
    return f"{sign}{body}e{exp10:+d}"


def decimal_digits(prec: int) -> int:
    """Printed digit count that never overstates ``prec`` bits."""
    return math.ceil(prec * 0.30103) + 2
