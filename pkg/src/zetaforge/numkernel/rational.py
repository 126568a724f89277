"""Exact rational polynomials and values of the form a + b*log 2 + c*log 3."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpfr, mpq

from ..errors import DomainError
from .arith import RealLike, as_exact, check_prec, const_log, precision, working_prec


def _trim(coeffs: Iterable) -> tuple[mpq, ...]:
    out = [as_exact(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True, init=False)
class RationalPolynomial:
    """Polynomial with exact rational coefficients, ascending degree.

    The zero polynomial has an empty coefficient tuple.
    """

    coeffs: tuple[mpq, ...]

    def __init__(self, coeffs: Iterable[RealLike] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff: RealLike = 1) -> RationalPolynomial:
        return cls([0] * degree + [coeff])

    @classmethod
    def linear(cls, c0: RealLike, c1: RealLike) -> RationalPolynomial:
        return cls([c0, c1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: RationalPolynomial) -> RationalPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (mpq(0),) * (n - len(self.coeffs))
        b = other.coeffs + (mpq(0),) * (n - len(other.coeffs))
        return RationalPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> RationalPolynomial:
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: RationalPolynomial) -> RationalPolynomial:
        return self + (-other)

    def __mul__(self, other) -> RationalPolynomial:
        if not isinstance(other, RationalPolynomial):
            k = as_exact(other)
            return RationalPolynomial(c * k for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return RationalPolynomial()
        out = [mpq(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> RationalPolynomial:
        if e < 0:
            raise ValueError("negative polynomial power")
        result, base = RationalPolynomial([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, t):
        """Horner evaluation; exact for rational ``t``, current context for mpfr."""
        acc = mpq(0) if not isinstance(t, type(mpfr(0))) else mpfr(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def integrate_unit(self) -> mpq:
        """Exact integral over [0, 1]."""
        return sum((c / (k + 1) for k, c in enumerate(self.coeffs)), mpq(0))

    def divmod_linear(self, c: mpq, sign: int) -> tuple[RationalPolynomial, mpq]:
        """Quotient and constant remainder of division by ``c + sign*t``."""
        # Synthetic division by (t - r) with r = -c/sign, then rescale by sign.
        r = -c / sign
        n = len(self.coeffs)
        if n == 0:
            return RationalPolynomial(), mpq(0)
        q = [mpq(0)] * (n - 1)
        acc = mpq(0)
        for k in range(n - 1, -1, -1):
            acc = acc * r + self.coeffs[k]
            if k > 0:
                q[k - 1] = acc
        return RationalPolynomial(x / sign for x in q), acc


@dataclass(frozen=True, init=False)
class LogLinearValue:
    """Exact value ``a + b*log(2) + c*log(3)`` with rational a, b, c."""

    a: mpq
    b: mpq
    c: mpq

    def __init__(self, a: RealLike = 0, b: RealLike = 0, c: RealLike = 0):
        object.__setattr__(self, "a", as_exact(a))
        object.__setattr__(self, "b", as_exact(b))
        object.__setattr__(self, "c", as_exact(c))

    def __add__(self, other: LogLinearValue) -> LogLinearValue:
        return LogLinearValue(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: LogLinearValue) -> LogLinearValue:
        return LogLinearValue(self.a - other.a, self.b - other.b, self.c - other.c)

    def __mul__(self, k: RealLike) -> LogLinearValue:
        k = as_exact(k)
        return LogLinearValue(self.a * k, self.b * k, self.c * k)

    __rmul__ = __mul__

    def as_tuple(self) -> tuple[mpq, mpq, mpq]:
        return (self.a, self.b, self.c)

    def to_big(self, prec: int) -> mpfr:
        check_prec(prec)
        wp = working_prec(prec, 4)
        with precision(wp):
            v = mpfr(self.a)
            if self.b:
                v += self.b * const_log(2, wp)
            if self.c:
                v += self.c * const_log(3, wp)
        return mpfr(v, prec)

    def __str__(self) -> str:
        return f"{self.a} + ({self.b})*log2 + ({self.c})*log3"


# log((c+1)/c) for sign +1 and log(c/(c-1)) for sign -1, in the (log2, log3) basis
_LOG_BASIS = {
    (1, 1): (1, 0),
    (2, 1): (-1, 1),
    (2, -1): (1, 0),
}


def rational_log_integral(
    poly: RationalPolynomial | Sequence[RealLike], c: RealLike, sign: int
) -> LogLinearValue:
    """Exact value of the integral of P(t)/(c + sign*t) over [0, 1].

    Only ``c`` in {1, 2} is supported, with ``sign=-1`` requiring ``c=2``,
    so that the logarithm lands in the {log 2, log 3} basis.
    """
    if not isinstance(poly, RationalPolynomial):
        poly = RationalPolynomial(poly)
    c = as_exact(c)
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    if c not in (1, 2):
        raise DomainError(f"c must be 1 or 2, got {c}")
    key = (int(c), sign)
    if key not in _LOG_BASIS:
        raise DomainError("pole on [0, 1]: c=1 with sign=-1")
    quotient, rem = poly.divmod_linear(c, sign)
    # integral of rem/(c + sign*t) = (rem/sign) * log((c+sign)/c)
    coeff = rem / sign
    if sign == 1:
        b2, b3 = _LOG_BASIS[key]
    else:
        # log((c-1)/c) = -log(c/(c-1))
        b2, b3 = (-x for x in _LOG_BASIS[key])
    return LogLinearValue(quotient.integrate_unit(), coeff * b2, coeff * b3)
