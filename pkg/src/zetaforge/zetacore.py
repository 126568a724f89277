"""Reference evaluation of zeta(s) for real s.

Euler-Maclaurin summation for s >= 1/2, the functional equation below that,
and zeta'(-2n) both in closed form and by central differences.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr, mpq

from .bernoulli import BernoulliTable, bernoulli_euler
from .errors import DomainError, PoleError, PrecisionUnreachable
from .numkernel import (
    RealLike,
    as_exact,
    check_prec,
    factorial,
    gamma_real,
    precision,
    working_prec,
)

HALF = mpq(1, 2)


@dataclass(frozen=True)
class ZetaOracleConfig:
    """Euler-Maclaurin parameters: direct-sum cutoff, correction depth, target bits."""

    cutoff: int
    depth: int
    prec: int

    def __post_init__(self):
        if self.depth < 1 or self.cutoff < 2 * self.depth:
            raise ValueError("need depth >= 1 and cutoff >= 2*depth")


MAX_DEPTH = 60
MAX_CUTOFF = 1 << 20


def _log2_remainder(s: float, n: int, p: int) -> float:
    """log2 of the Euler-Maclaurin remainder bound after ``p`` corrections.

    |R| <= |B_{2p+2}| / (2p+2)! * |s (s+1) ... (s+2p)| * N^(-s-2p-1), valid for real s.
    Uses 2 (2p+2)! / (2 pi)^(2p+2) * zeta(2p+2) >= |B_{2p+2}|, with zeta(2p+2) <= 2.
    """
    lb = math.log2(4.0) - (2 * p + 2) * math.log2(2 * math.pi)
    rising = sum(math.log2(abs(s + i)) for i in range(2 * p + 1) if s + i != 0)
    return lb + rising - (s + 2 * p + 1) * math.log2(n)


def em_config(s: RealLike, prec: int, max_cutoff: int = MAX_CUTOFF) -> ZetaOracleConfig:
    """Depth ceil(prec/4) capped at 60, then the least cutoff certifying 2^(-prec)."""
    p = min(math.ceil(prec / 4), MAX_DEPTH)
    sf = float(as_exact(s))
    target = -(prec + 2)
    lo = 2 * p
    if _log2_remainder(sf, lo, p) <= target:
        return ZetaOracleConfig(lo, p, prec)
    hi = lo
    while _log2_remainder(sf, hi, p) > target:
        hi *= 2
        if hi > max_cutoff:
            raise PrecisionUnreachable(
                f"Euler-Maclaurin cannot certify {prec} bits at s={sf} with depth {p} and cutoff <= {max_cutoff}"
            )
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _log2_remainder(sf, mid, p) <= target:
            hi = mid
        else:
            lo = mid
    return ZetaOracleConfig(hi, p, prec)


def zeta_em(s: RealLike, prec: int, table: BernoulliTable | None = None) -> mpfr:
    """zeta(s) for real s >= 1/2 by Euler-Maclaurin, certified to 2^(-prec).

    Raises PoleError at s = 1 and PrecisionUnreachable when no admissible
    cutoff certifies the requested precision.
    """
    check_prec(prec)
    s = as_exact(s)
    if s == 1:
        raise PoleError("pole at s=1")
    if s < HALF:
        raise DomainError(f"zeta_em needs s >= 1/2, got {s}")
    cfg = em_config(s, prec)
    n, p = cfg.cutoff, cfg.depth
    wp = working_prec(prec, n + p) + 8
    with precision(wp):
        sm = mpfr(s)
        acc = mpfr(0)
        for k in range(1, n):
            acc += mpfr(k) ** (-sm)
        big_n = mpfr(n)
        n_pow = big_n ** (-sm)
        acc += n_pow * big_n / (sm - 1) + n_pow / 2
        # j-th correction: B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^(-s-2j+1)
        rising = sm
        term_pow = n_pow / big_n
        inv_n2 = 1 / (big_n * big_n)
        for j in range(1, p + 1):
            acc += mpfr(bernoulli_euler(2 * j, table)) / factorial(2 * j) * rising * term_pow
            rising *= (sm + 2 * j - 1) * (sm + 2 * j)
            term_pow *= inv_n2
        return mpfr(acc, prec)


def _sin_half_pi(s: mpq, wp: int) -> mpfr:
    """sin(pi s / 2) with exact argument reduction mod 4."""
    r = s - 4 * gmpy2.f_div(s.numerator, 4 * s.denominator)
    if r.denominator == 1:
        return mpfr((0, 1, 0, -1)[int(r)])
    with precision(wp):
        return gmpy2.sin(gmpy2.const_pi() * mpfr(r) / 2)


def zeta_reflect(s: RealLike, prec: int, table: BernoulliTable | None = None) -> mpfr:
    """zeta(s) for s < 1/2 from zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)."""
    check_prec(prec)
    s = as_exact(s)
    if s >= HALF:
        raise DomainError(f"zeta_reflect needs s < 1/2, got {s}")
    if s == 0:
        return mpfr(-0.5, prec)
    wp = working_prec(prec, 8) + 8
    sn = _sin_half_pi(s, wp)
    if gmpy2.is_zero(sn):
        return mpfr(0, prec)
    g = gamma_real(1 - s, wp)
    z = zeta_em(1 - s, wp, table)
    with precision(wp):
        sm = mpfr(s)
        pi = gmpy2.const_pi()
        return mpfr(mpfr(2) ** sm * pi ** (sm - 1) * sn * g * z, prec)


class ZetaCache:
    """Memo of zeta values keyed by (exact argument, precision).

    Lookups are lock-free dictionary reads; inserts take a lock.
    """

    def __init__(self):
        self._values: dict[tuple[mpq, int], mpfr] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._values)

    def get(self, s: mpq, prec: int) -> mpfr | None:
        return self._values.get((s, prec))

    def put(self, s: mpq, prec: int, value: mpfr) -> mpfr:
        with self._lock:
            return self._values.setdefault((s, prec), value)

    def clear(self) -> None:
        with self._lock:
            self._values.clear()


DEFAULT_CACHE = ZetaCache()


def zeta_real(s: RealLike, prec: int, cache: ZetaCache | None = None) -> mpfr:
    """zeta(s) for any real s != 1, dispatching on s >= 1/2 and memoizing."""
    s = as_exact(s)
    cache = DEFAULT_CACHE if cache is None else cache
    hit = cache.get(s, prec)
    if hit is not None:
        return hit
    value = zeta_em(s, prec) if s >= HALF else zeta_reflect(s, prec)
    return cache.put(s, prec, value)


def zeta_minus_one(x: RealLike, prec: int) -> mpfr:
    """zeta(x) - 1 for x >= 2 to absolute error 2^(-prec).

    Large arguments are summed directly with the tail bounded by the
    integral from K to infinity; small ones defer to zeta_real.
    """
    x = as_exact(x)
    if x < 2:
        raise DomainError(f"zeta_minus_one needs x >= 2, got {x}")
    xf = float(x)
    # terms k >= 2 needed: k^(-x) < 2^(-prec-10)
    kmax = 2 ** ((prec + 10) / xf)
    if kmax > 64:
        with precision(prec + 8):
            return mpfr(zeta_real(x, prec + 8) - 1, prec)
    wp = prec + 16
    with precision(wp):
        xm = mpfr(x)
        acc = mpfr(0)
        k = 2
        while k <= kmax + 1:
            acc += mpfr(k) ** (-xm)
            k += 1
        # remaining sum_{j >= k} j^(-x) <= k^(1-x)/(x-1) + k^(-x); far below 2^(-prec)
        return mpfr(acc, prec)


def zeta_prime_neg_even(n: int, prec: int) -> mpfr:
    """zeta'(-2n) = (-1)^n Gamma(2n+1) zeta(2n+1) / (2 (2 pi)^(2n))."""
    check_prec(prec)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    wp = working_prec(prec, 2 * n + 4) + 8
    z = zeta_real(2 * n + 1, wp)
    with precision(wp):
        two_pi = 2 * gmpy2.const_pi()
        v = (-1) ** n * factorial(2 * n) * z / (2 * two_pi ** (2 * n))
        return mpfr(v, prec)


def zeta_prime_fd(s: RealLike, prec: int, h: RealLike) -> mpfr:
    """Central difference (zeta(s+h) - zeta(s-h)) / (2h).

    Internal precision is raised by 2*|log2 h| so the cancellation in the
    numerator does not eat into the requested bits.
    """
    check_prec(prec)
    s, h = as_exact(s), as_exact(h)
    if h <= 0:
        raise DomainError(f"step must be positive, got {h}")
    extra = 2 * max(1, math.ceil(abs(math.log2(float(h)))))
    wp = prec + extra + 16
    hi = zeta_real(s + h, wp)
    lo = zeta_real(s - h, wp)
    with precision(wp):
        return mpfr((hi - lo) / (2 * mpfr(h)), prec)
