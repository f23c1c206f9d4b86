from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ova360.errors import BoundError, DomainError
from ova360.primality import (
    bertrand_prime,
    composite_interval,
    interval_gap,
    is_prime,
    is_prime_big,
    odd_prime_bitmap,
    sieve_primes,
)


def test_sieve_empty_below_two():
    assert sieve_primes(0).count == 0
    assert sieve_primes(1).count == 0


def test_sieve_small():
    assert sieve_primes(30).primes.tolist() == [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29,
    ]


def test_sieve_millionth_count():
    assert sieve_primes(10**6).count == 78498


def test_sieve_segment_size_irrelevant():
    a = sieve_primes(10**5, segment_odds=1 << 8).primes
    b = sieve_primes(10**5, segment_odds=1 << 20).primes
    assert (a == b).all()


def test_sieve_negative_limit_rejected():
    with pytest.raises(DomainError):
        sieve_primes(-1)


def test_sieve_bound():
    with pytest.raises(BoundError):
        odd_prime_bitmap((1 << 40) + 2)


def test_bitmap_indexing():
    bm = odd_prime_bitmap(100)
    assert not bm[0]  # 1
    assert bm[1] and bm[2]  # 3, 5
    assert not bm[4]  # 9
    assert bm[48]  # 97


def test_is_prime_rejects_beyond_64bit():
    with pytest.raises(DomainError):
        is_prime(1 << 64)


def test_is_prime_big_delegates_below_64bit():
    assert is_prime_big(2**61 - 1)
    assert not is_prime_big(math.factorial(20) + 2)


def test_is_prime_big_deterministic():
    n = (1 << 89) - 1
    assert is_prime_big(n) == is_prime_big(n)


def test_composite_interval_examples():
    iv = composite_interval(5)
    assert (iv.low, iv.high) == (722, 726)
    iv = composite_interval(3)
    assert (iv.low, iv.high) == (26, 28)
    assert iv.members() == [26, 27, 28]


def test_composite_interval_verify_mode():
    composite_interval(19, verify=True)


def test_composite_interval_bounds():
    with pytest.raises(DomainError):
        composite_interval(0)
    with pytest.raises(BoundError):
        composite_interval(41)


@given(st.integers(min_value=1, max_value=20))
@settings(max_examples=20, deadline=None)
def test_composite_interval_members_composite(n):
    iv = composite_interval(n)
    assert iv.high - iv.low == n - 1
    for m in iv.members():
        assert not is_prime_big(m)


def test_interval_gap_values():
    # distance from (n+1)!+n+1 to (n+2)!+2
    assert interval_gap(1) == 4 - 1 + 1  # 4, next interval starts at 8
    assert interval_gap(5) == 36 * 120 - 4


@given(st.integers(min_value=1, max_value=40))
@settings(max_examples=40, deadline=None)
def test_interval_gap_identity(n):
    gap = interval_gap(n)
    assert gap == (math.factorial(n + 2) + 2) - (math.factorial(n + 1) + n + 1)
    assert gap == (n + 1) ** 2 * math.factorial(n) - n + 1


def test_bertrand_examples():
    assert bertrand_prime(2) == 3
    assert bertrand_prime(10) == 11
    assert bertrand_prime(100) == 101


def test_bertrand_rejects_small():
    with pytest.raises(DomainError):
        bertrand_prime(1)


def test_bertrand_exhaustive_to_1e5():
    primes = sieve_primes(2 * 10**5 + 10).primes
    import numpy as np

    for n in range(2, 10**5 + 1, 997):  # stride keeps runtime low
        idx = np.searchsorted(primes, n + 1)
        assert n < int(primes[idx]) < 2 * n
        assert bertrand_prime(n) == int(primes[idx])


def test_bertrand_dense_small_range():
    primes = sieve_primes(4 * 10**3).primes.tolist()
    ps = set(primes)
    for n in range(2, 2000):
        p = bertrand_prime(n)
        assert n < p < 2 * n and p in ps
        assert all(m not in ps for m in range(n + 1, p))
