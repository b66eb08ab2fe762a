from math import comb

import pytest
import sympy

from cubicnorm import ring, sieve
from cubicnorm.errors import BadModulus, EmptyPrimeSet, InvalidRange
from cubicnorm.ring import RingContext


def test_admissible_examples():
    r = sieve.admissible(2, 20)
    assert r.passes_mod3 and r.passes_smallhammer and r.k == 27
    assert comb(20, 2) == 190 == 27 * 7 + 1
    assert not r.passes_hammer and (27 * 6) % 8 == 2
    assert not r.admissible

    r = sieve.admissible(2, 7)
    assert not r.passes_growth and 7**3 == 343 <= 6 * 2**6 == 384

    assert not sieve.admissible(2, 9).passes_mod3


def test_admissible_report_invariants():
    for t in range(2, 7):
        for m in range(3, 400):
            r = sieve.admissible(t, m)
            assert (r.k is not None) == r.passes_smallhammer
            if r.k is not None:
                assert comb(m, 2) == r.k * (t**3 - 1) + 1
            assert r.admissible == (r.passes_mod3 and r.passes_smallhammer and r.passes_hammer and r.passes_growth)


def test_admissible_invalid_range():
    with pytest.raises(InvalidRange):
        sieve.admissible(1, 10)
    with pytest.raises(InvalidRange):
        sieve.admissible(2, 2)


def test_growth_threshold_exact():
    for t in range(2, 400):
        m = sieve.growth_threshold(t)
        assert m**3 > 6 * t**6 >= (m - 1) ** 3


def test_enumerate_small_ranges():
    assert len(sieve.enumerate_candidates(2, 2, 10)) == 0
    assert len(sieve.enumerate_candidates(26, 352, 225676)) == 0
    with pytest.raises(InvalidRange):
        sieve.enumerate_candidates(5, 4, 100)


@pytest.mark.parametrize("t_max,m_max", [(6, 3000), (12, 800)])
def test_enumerate_matches_pairwise_admissible(t_max, m_max):
    expected = [(t, m) for t in range(2, t_max + 1) for m in range(3, m_max + 1) if sieve.admissible(t, m).admissible]
    assert list(sieve.enumerate_candidates(2, t_max, m_max).pairs) == expected


def test_growth_filter_is_implied_by_congruences():
    with_growth = sieve.enumerate_candidates(2, 352, 225676)
    without = sieve.enumerate_candidates(2, 352, 225676, growth=False)
    assert with_growth.pairs == without.pairs
    assert all(m**3 > 6 * t**6 for t, m in without.pairs)


def test_enumerate_parallel_is_identical():
    serial = sieve.enumerate_candidates(2, 40, 50000, workers=1)
    assert sieve.enumerate_candidates(2, 40, 50000, workers=3) == serial


def test_csv_round_trip():
    table = sieve.enumerate_candidates(2, 30, 20000)
    text = table.to_csv()
    assert text.splitlines()[0] == "t,count"
    assert sieve.CandidateTable.rows_from_csv(text) == table.rows


def test_lucas_against_direct_binomials():
    for n in range(0, 300):
        for k in range(0, n + 1):
            assert sieve.binomial_mod_prime(n, k, 3) == comb(n, k) % 3


def test_series_matches_ring_power():
    for t in range(2, 6):
        ctx = RingContext(t)
        for m in range(2, 120):
            assert sieve.s2_coefficient_series(t, m) == ring.pow(ctx.unit(), m, ctx).a2
    assert sieve.s2_coefficient_series(2, 5) == comb(5, 2) * 8 + comb(5, 5) * (1 - 8) == 73


def test_loki_is_the_series_mod_t6():
    for t in range(2, 8):
        for m in range(5, 300, 3):
            q = t**6
            w = 1 - t**3
            rhs = comb(m, 3) * t**3 * w ** ((m - 5) // 3) + w ** ((m - 2) // 3)
            assert sieve.s2_coefficient_series(t, m) % q == rhs % q


def test_smallhammer_power_of_t():
    for t in range(2, 51):
        d = t**3 - 1
        for m in range(5, 200, 3):
            assert pow(t, m - 2, d) == 1 % d


def test_exact_vs_modular_coefficient():
    primes = sieve.DEFAULT_PRIMES[:3] + (101, 1009)
    for t in range(2, 6):
        ctx = RingContext(t)
        for m in range(0, 301):
            exact = ring.pow(ctx.unit(), m, ctx).a2
            for p in primes:
                if ctx.d % p:
                    assert ring.pow_mod_prime(ctx.unit(), m, ctx, p).r2 == exact % p


def test_default_primes_are_the_largest_below_2_62():
    expected = []
    p = 2**62
    while len(expected) < 16:
        p = sympy.prevprime(p)
        expected.append(p)
    assert sieve.DEFAULT_PRIMES == tuple(expected)


def test_final_check_examples():
    r = sieve.final_coefficient_check(2, 5, [101])
    assert r.eliminated and r.witness_prime == 101
    r = sieve.final_coefficient_check(2, 2, [101, 103])
    assert not r.eliminated and r.primes_tested == (101, 103)


def test_final_check_strict_mode():
    # coefficient of (t - s)^2 is 1; (t - s)^5 at t=2 is 73; neither is -1
    assert not sieve.final_coefficient_check(2, 2, [101], strict=True).eliminated
    assert sieve.final_coefficient_check(2, 5, [101], strict=True).eliminated
    # 73 == -1 mod 37 * 2 ... use p = 37: 73 = 2*37 - 1
    assert not sieve.final_coefficient_check(2, 5, [37], strict=True).eliminated
    assert sieve.final_coefficient_check(2, 5, [37]).eliminated


def test_final_check_bad_primes():
    with pytest.raises(EmptyPrimeSet):
        sieve.final_coefficient_check(2, 5, [])
    with pytest.raises(BadModulus):
        sieve.final_coefficient_check(2, 5, [7])
    with pytest.raises(BadModulus):
        sieve.final_coefficient_check(2, 5, [100])
    with pytest.raises(BadModulus):
        sieve.final_coefficient_check(2, 5, [101, 101])


def test_eliminate_reports_exact_solution():
    r = sieve.eliminate(2, 2, [101])
    assert r.status == "solution"


def test_verify_small_config():
    report = sieve.verify_theorem(sieve.VerifyConfig(m_max=10, t_max=5))
    assert report.verdict == "verified" and len(report.table) == 0
    with pytest.raises(EmptyPrimeSet):
        sieve.verify_theorem(sieve.VerifyConfig(m_max=10, t_max=5, primes=[]))
