import threading
from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr, mpq

from zetaforge.bernoulli import (
    EULER,
    MILGRAM,
    BernoulliTable,
    bernoulli,
    bernoulli_euler,
    bernoulli_milgram,
    eq5_residual,
    milgram_coefficients,
    zeta_even_closed,
    zeta_neg_odd_exact,
)
from zetaforge.errors import DomainError
from zetaforge.numkernel import to_decimal
from zetaforge.numkernel.arith import precision


def _primes_upto(n):
    sieve = [True] * (n + 1)
    sieve[:2] = [False, False]
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = [False] * len(sieve[i * i :: i])
    return [i for i, p in enumerate(sieve) if p]


def test_euler_examples():
    assert bernoulli_euler(0) == 1
    assert bernoulli_euler(1) == Fraction(-1, 2)
    assert bernoulli_euler(12) == Fraction(-691, 2730)
    assert bernoulli_euler(7) == 0


def test_milgram_examples():
    assert bernoulli_milgram(1) == Fraction(1, 6)
    assert bernoulli_milgram(2) == Fraction(-1, 30)
    assert bernoulli_milgram(6) == Fraction(-691, 2730)


def test_milgram_expanded_coefficients_m6():
    coeffs = milgram_coefficients(6)
    assert coeffs == {
        10: mpq(-11242, 2047),
        8: mpq(-12573, 2047),
        6: mpq(-4092, 2047),
        4: mpq(-385, 2047),
        2: mpq(-6, 2047),
        0: mpq(1, 53222),
    }


def test_euler_expanded_coefficients_m6():
    # B_12 = -(1/13) sum_{n<12} C(13, n) B_n
    coeffs = {n: -mpq(gmpy2.comb(13, n), 13) for n in (10, 8, 6, 4, 2, 0, 1)}
    assert [coeffs[n] for n in (10, 8, 6, 4, 2)] == [-22, -99, -132, -55, -6]
    assert coeffs[0] == mpq(-1, 13) and coeffs[1] == -1


@pytest.mark.parametrize("m", [1, 2, 5, 17, 30])
def test_literal_coefficients_reproduce_fast_recursion(m):
    literal = sum((c * bernoulli_milgram(i // 2) if i else c for i, c in milgram_coefficients(m).items()), mpq(0))
    assert literal == bernoulli_milgram(m)


def test_recursions_agree_exactly_to_150():
    table = BernoulliTable()
    for m in range(1, 151):
        assert bernoulli_milgram(m, table) == bernoulli_euler(2 * m, table)


def test_methods_do_not_share_entries():
    table = BernoulliTable()
    bernoulli_euler(40, table)
    assert table.known(EULER) == 21
    assert table.known(MILGRAM) == 1
    bernoulli_milgram(5, table)
    assert table.known(MILGRAM) == 6


@pytest.mark.parametrize("m", [1, 2, 20])
def test_eq5_examples(m):
    assert eq5_residual(m) == 0


def test_eq5_m1_terms_by_hand():
    # n=0: C(2,2)*1/(-3)*(1)/(-2) = 1/6 ; n=1: C(2,0)*(1/6)/(-1)*1 = -1/6
    assert mpq(1, 6) + mpq(-1, 6) == eq5_residual(1)


def test_eq5_zero_to_100():
    assert all(eq5_residual(m) == 0 for m in range(1, 101))


def test_eq5_detects_a_perturbed_table():
    table = BernoulliTable()
    bernoulli(10, MILGRAM, table)
    table._even[MILGRAM][3] += mpq(1, 10**6)
    assert eq5_residual(5, MILGRAM, table) != 0


def test_sign_alternation():
    for m in range(1, 120):
        b = bernoulli_euler(2 * m)
        assert (b > 0) == (m % 2 == 1)


def test_von_staudt_clausen_denominators():
    primes = _primes_upto(102)
    for m in range(1, 51):
        expected = 1
        for p in primes:
            if (2 * m) % (p - 1) == 0:
                expected *= p
        assert bernoulli_milgram(m).denominator == expected
        assert bernoulli_euler(2 * m).denominator == expected


def test_table_invariants():
    table = BernoulliTable()
    assert table.get(0, EULER) == 1
    assert table.get(1, EULER) == mpq(-1, 2)
    assert table.get(9, EULER) == 0
    assert table.get(1, MILGRAM) is None
    first = bernoulli_euler(20, table)
    bernoulli_euler(60, table)
    assert table.get(20, EULER) is first


def test_table_concurrent_extension():
    table = BernoulliTable()
    results = {}

    def work(i):
        results[i] = [bernoulli(2 * k, EULER if i % 2 else MILGRAM, table) for k in range(1, 80)]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    ref = [bernoulli_euler(2 * k) for k in range(1, 80)]
    assert all(results[i] == ref for i in results)
    assert table.known(EULER) == 80 and table.known(MILGRAM) == 80


def test_rejects_negative_and_b1_from_even_recursion():
    with pytest.raises(DomainError):
        bernoulli_euler(-2)
    with pytest.raises(DomainError):
        bernoulli(1, MILGRAM)
    with pytest.raises(DomainError):
        bernoulli_milgram(0)


@pytest.mark.parametrize(
    "m,digits",
    [(1, "1.6449340668482264365"), (2, "1.0823232337111381915"), (6, "1.0002460865533080483")],
)
def test_zeta_even_closed(m, digits):
    v = zeta_even_closed(m, 64)
    with precision(128):
        ref = mpfr(digits)
        assert abs(v - ref) / ref <= mpfr(2) ** -62


def test_zeta_even_closed_matches_pi_powers():
    with precision(300):
        pi = gmpy2.const_pi()
        refs = {1: pi**2 / 6, 2: pi**4 / 90, 6: 691 * pi**12 / 638512875}
    for m, ref in refs.items():
        v = zeta_even_closed(m, 256)
        with precision(300):
            assert abs(v - ref) / ref <= mpfr(2) ** -250


@pytest.mark.parametrize("n,expected", [(1, mpq(-1, 12)), (2, mpq(1, 120)), (6, mpq(691, 32760))])
def test_zeta_neg_odd_exact(n, expected):
    assert zeta_neg_odd_exact(n) == expected
