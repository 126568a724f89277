"""Tanh-sinh (double-exponential) quadrature on (0, 1)."""

from __future__ import annotations

from typing import Callable

import gmpy2
from gmpy2 import mpfr

from ..errors import NonConvergence
from .arith import check_prec, precision, working_prec

MAX_LEVEL = 12


def _nodes(k: int, h: mpfr):
    """Abscissa t, complement 1 - t and weight dt/dk at node k*h."""
    x = k * h
    v = gmpy2.const_pi() * gmpy2.sinh(x)
    ev = gmpy2.exp(-abs(v))
    small = ev / (1 + ev)
    large = 1 / (1 + ev)
    t, u = (large, small) if v >= 0 else (small, large)
    w = gmpy2.const_pi() * gmpy2.cosh(x) * t * u
    return t, u, w


def tanh_sinh_quadrature(
    f: Callable,
    prec: int,
    *,
    complement: bool = False,
    max_level: int = MAX_LEVEL,
) -> mpfr:
    """Integrate ``f`` over (0, 1) to about ``prec`` bits.

    With ``complement=True`` the integrand is called as ``f(t, 1 - t)`` where
    the second argument is computed without cancellation, which is what makes
    endpoint singularities like ``(1 - t)**-0.5`` tractable.

    The step halves each level until two consecutive levels agree within
    2^(-prec) (relative to max(1, |I|)); raises NonConvergence otherwise.
    """
    check_prec(prec)
    wp = working_prec(prec, 1 << 12) + 16
    call = f if complement else (lambda t, u: f(t))

    with precision(wp):
        tiny = gmpy2.mul_2exp(mpfr(1), -prec - 16)

        def branch_sum(h: mpfr, start: int, step: int) -> mpfr:
            acc = mpfr(0)
            for direction in (1, -1):
                k = start
                while True:
                    t, u, w = _nodes(direction * k, h)
                    if gmpy2.is_zero(t) or gmpy2.is_zero(u):
                        break
                    term = call(t, u) * w
                    acc += term
                    # weights fall doubly-exponentially; stop once both the
                    # weight and the contribution are negligible
                    if w < tiny and abs(term) < tiny:
                        break
                    k += step
            return acc

        h = mpfr(1)
        total = call(mpfr(0.5), mpfr(0.5)) * gmpy2.const_pi() / 4
        total += branch_sum(h, 1, 1)
        prev = total * h
        for level in range(1, max_level + 1):
            h = h / 2
            # only the odd multiples of the new step are new nodes
            total += branch_sum(h, 1, 2)
            cur = total * h
            if abs(cur - prev) <= tiny * 2**16 * max(mpfr(1), abs(cur)):
                return mpfr(cur, prec)
            prev = cur
    raise NonConvergence(f"tanh-sinh did not converge to {prec} bits within {max_level} levels")
