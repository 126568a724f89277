"""Real Gamma function: upward shift + Stirling series, reflection below 1/2."""

from __future__ import annotations

import math

import gmpy2
from gmpy2 import mpfr, mpq

from ..errors import PoleError
from .arith import RealLike, as_exact, check_prec, factorial, precision, working_prec


def _is_exact(x) -> bool:
    return not isinstance(x, type(mpfr(0)))


def _sin_pi(x: mpq, wp: int) -> mpfr:
    """sin(pi*x) for exact x, reducing the argument exactly mod 2 first."""
    r = x - 2 * gmpy2.f_div(x.numerator, 2 * x.denominator)
    with precision(wp):
        return gmpy2.sin(gmpy2.const_pi() * mpfr(r))


def _log_gamma_stirling(z: mpfr, wp: int) -> mpfr:
    """log Gamma(z) for large positive z via the Stirling series.

    The remainder after K correction terms is bounded by the first omitted
    term (real z > 0), so summation stops once that term drops below
    2^(-wp) relative to the leading part.
    """
    from ..bernoulli import bernoulli_euler

    with precision(wp):
        lead = (z - mpfr(0.5)) * gmpy2.log(z) - z + gmpy2.log(2 * gmpy2.const_pi()) / 2
        tol = gmpy2.mul_2exp(abs(lead) + 1, -wp)
        z2 = z * z
        zpow = z
        acc = mpfr(0)
        k = 1
        while True:
            b = bernoulli_euler(2 * k)
            term = mpfr(b) / (2 * k * (2 * k - 1)) / zpow
            # bound on the remainder once this term is dropped
            if abs(term) <= tol:
                return lead + acc
            acc += term
            zpow *= z2
            k += 1
            if k > 4 * wp:
                raise ArithmeticError("Stirling series failed to reach tolerance")


def gamma_real(x: RealLike, prec: int) -> mpfr:
    """Gamma(x) for real x to relative error 2^(-prec+4).

    Raises PoleError at non-positive integers.
    """
    check_prec(prec)
    exact = _is_exact(x)
    if exact:
        x = as_exact(x)
        if x.denominator == 1:
            n = int(x)
            if n <= 0:
                raise PoleError(f"Gamma has a pole at {n}")
            if n <= 2000:
                return mpfr(factorial(n - 1), prec)
    elif gmpy2.is_integer(x) and x <= 0:
        raise PoleError(f"Gamma has a pole at {x}")

    threshold = 20 + prec // 8
    shift = max(0, math.ceil(threshold - float(x)))
    big = abs(float(x)) + shift + 2
    # log Gamma is O(x log x); its absolute error becomes relative error of Gamma
    wp = working_prec(prec, 4 * (shift + 1) + prec) + math.ceil(math.log2(big * math.log(big) + 1))

    if x < mpq(1, 2):
        # Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
        if exact:
            s = _sin_pi(x, wp)
        else:
            with precision(wp):
                s = gmpy2.sin(gmpy2.const_pi() * x)
        g = gamma_real(1 - x, wp)
        with precision(wp):
            return mpfr(gmpy2.const_pi() / (s * g), prec)

    with precision(wp):
        z = mpfr(x)
        denom = mpfr(1)
        for i in range(shift):
            denom *= z + i
        lg = _log_gamma_stirling(z + shift, wp)
        return mpfr(gmpy2.exp(lg) / denom, prec)
