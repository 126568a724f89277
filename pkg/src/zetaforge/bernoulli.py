"""Exact Bernoulli numbers from two independent recursions.

``bernoulli_euler`` solves the classical identity
``sum_{n=0}^{k} C(k+1, n) B_n = 0`` for its top term. ``bernoulli_milgram``
uses the even-index recursion that falls out of the zeta series at even
integers; it never touches B_1. The two share one :class:`BernoulliTable`,
but each reads only entries it produced itself.
"""

from __future__ import annotations

import threading

import gmpy2
from gmpy2 import mpfr, mpq, mpz

from .errors import DomainError
from .numkernel import check_prec, factorial, pow2, precision, working_prec

EULER = "euler"
MILGRAM = "milgram"
METHODS = (EULER, MILGRAM)


class BernoulliTable:
    """Append-only cache of B_k, partitioned by producing method.

    Reads never block. Extending a partition takes the table lock, so at most
    one thread computes new entries at a time.
    """

    def __init__(self):
        self._lock = threading.RLock()
        # even-index values only; odd indices are fixed by the invariants
        self._even = {EULER: [mpq(1)], MILGRAM: [mpq(1)]}

    def __len__(self) -> int:
        return max(len(v) for v in self._even.values())

    def known(self, method: str) -> int:
        """Number of even-index entries (B_0, B_2, ...) held for ``method``."""
        return len(self._even[method])

    def get(self, k: int, method: str) -> mpq | None:
        if method not in self._even:
            raise ValueError(f"unknown method {method!r}")
        if k == 1:
            return mpq(-1, 2) if method == EULER else None
        if k % 2:
            return mpq(0)
        entries = self._even[method]
        j = k // 2
        return entries[j] if j < len(entries) else None

    def extend(self, method: str, upto: int) -> None:
        """Fill ``method`` entries through even index ``upto``."""
        step = _euler_step if method == EULER else _milgram_step
        entries = self._even[method]
        if len(entries) > upto // 2:
            return
        with self._lock:
            while len(entries) <= upto // 2:
                entries.append(step(entries, len(entries)))


def _euler_step(even: list[mpq], m: int) -> mpq:
    """B_{2m} from B_0, B_1 and B_2 .. B_{2m-2}."""
    k = 2 * m
    s = mpq(1) + (k + 1) * mpq(-1, 2)
    for j in range(1, m):
        s += gmpy2.comb(k + 1, 2 * j) * even[j]
    return -s / (k + 1)


def _milgram_step(even: list[mpq], m: int) -> mpq:
    """B_{2m} from B_0 .. B_{2m-2} by the even-index recursion.

    Gamma(2m+1)/(Gamma(2m-2n+1) Gamma(2n+2)) = C(2m+1, 2n+1)/(2m+1) and
    2^(-2m)/(1 - 2^(1-2m)) = 1/(2^(2m) - 2), so the inner sum runs over
    integers times table entries; the result is identical to the literal
    form given by :func:`milgram_coefficients`.
    """
    s = mpq(0)
    for n in range(1, m + 1):
        j = m - n
        s += gmpy2.comb(2 * m + 1, 2 * n + 1) * (2 - (mpz(1) << (2 * j))) * even[j]
    return s / ((2 * m + 1) * ((mpz(1) << (2 * m)) - 2))


DEFAULT_TABLE = BernoulliTable()


def bernoulli(k: int, method: str = EULER, table: BernoulliTable | None = None) -> mpq:
    if k < 0:
        raise DomainError(f"Bernoulli index must be >= 0, got {k}")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    table = DEFAULT_TABLE if table is None else table
    if k == 1 and method == MILGRAM:
        raise DomainError("the even-index recursion does not produce B_1")
    value = table.get(k, method)
    if value is None:
        table.extend(method, k)
        value = table.get(k, method)
    return value


def bernoulli_euler(k: int, table: BernoulliTable | None = None) -> mpq:
    return bernoulli(k, EULER, table)


def bernoulli_milgram(m: int, table: BernoulliTable | None = None) -> mpq:
    """B_{2m} from the even-index recursion (m >= 1)."""
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    return bernoulli(2 * m, MILGRAM, table)


def milgram_coefficients(m: int) -> dict[int, mpq]:
    """Coefficients of B_{2m-2n} in the recursion for B_{2m}, keyed by index.

    Evaluated literally: Gamma(2m+1) 2^(-2m) / (1 - 2^(1-2m)) times
    (2 - 2^(2m-2n)) / (Gamma(2m-2n+1) Gamma(2n+2)). For m = 6 this gives
    -11242/2047 for B_10 and 1/53222 for B_0.
    """
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    pref = mpq(factorial(2 * m)) * pow2(-2 * m) / (1 - pow2(1 - 2 * m))
    out = {}
    for n in range(1, m + 1):
        idx = 2 * m - 2 * n
        out[idx] = pref * (2 - pow2(idx)) / (factorial(idx) * factorial(2 * n + 1))
    return out


def eq5_residual(m: int, method: str = MILGRAM, table: BernoulliTable | None = None) -> mpq:
    """Left side of the rewritten even-index recursion; exactly zero when it holds.

    Sum over n = 0..m of C(2m, 2m-2n) B_{2n} / (2n-2m-1) * (2 - 2^(2n)) / (2 - 2^(2m)).
    """
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    denom = 2 - pow2(2 * m)
    total = mpq(0)
    for n in range(m + 1):
        b = bernoulli(2 * n, method, table)
        total += gmpy2.comb(2 * m, 2 * m - 2 * n) * b / (2 * n - 2 * m - 1) * ((2 - pow2(2 * n)) / denom)
    return total


def zeta_even_closed(m: int, prec: int, table: BernoulliTable | None = None) -> mpfr:
    """zeta(2m) = (-1)^(m+1) (2 pi)^(2m) B_{2m} / (2 (2m)!)."""
    check_prec(prec)
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    coeff = (-1) ** (m + 1) * bernoulli_euler(2 * m, table) / (2 * factorial(2 * m))
    wp = working_prec(prec, 2 * m + 4)
    with precision(wp):
        two_pi = 2 * gmpy2.const_pi()
        return mpfr(coeff * two_pi ** (2 * m), prec)


def zeta_neg_odd_exact(n: int, table: BernoulliTable | None = None) -> mpq:
    """zeta(1 - 2n) = -B_{2n} / (2n), exactly."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return -bernoulli_euler(2 * n, table) / (2 * n)
