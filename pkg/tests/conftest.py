"""Shared fixtures. The trial-division oracle is deliberately naive and
independent of the package internals."""

from __future__ import annotations

import math

import pytest


def trial_division_primes(limit: int) -> list[int]:
    out = []
    for n in range(2, limit + 1):
        for d in range(2, math.isqrt(n) + 1):
            if n % d == 0:
                break
        else:
            out.append(n)
    return out


@pytest.fixture(scope="session")
def oracle_primes_10k() -> list[int]:
    return trial_division_primes(10**4)


@pytest.fixture(scope="session")
def oracle_prime_set_10k(oracle_primes_10k) -> set[int]:
    return set(oracle_primes_10k)
