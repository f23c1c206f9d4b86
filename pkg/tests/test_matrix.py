from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from ova360 import goldens
from ova360.errors import DomainError
from ova360.matrix import (
    build_matrix,
    density,
    dirichlet_all,
    dirichlet_ratio,
    matrix_stats,
    prime_count,
    residue_counts,
)
from ova360.ova import residue_sets
from ova360.primality import is_prime_big, odd_prime_bitmap, sieve_primes

GOLDEN_MATRICES = {
    7: "matrix_7.txt",
    353: "matrix_353.txt",
    23: "matrix_23.txt",
    337: "matrix_337.txt",
}


def test_build_first_row_ova7():
    m = build_matrix(7, 10)
    assert m.row(1) == (1, 1, 1, 1, 0, 0, 0, 1, 0, 1)
    # rotation 1 -> 367, rotation 4 -> 1447, both prime
    assert is_prime_big(367) and is_prime_big(1447)


def test_build_entry_indexing():
    m = build_matrix(353, 10)
    # entry (1, 5) covers 353 + 360*5 = 2153
    assert m.bits[0][4] == int(is_prime_big(2153)) == 1


def test_build_one_by_one():
    assert build_matrix(7, 1).bits == ((1,),)
    assert build_matrix(77, 1).bits == ((0,),)  # 437 = 19 * 23


def test_build_validation():
    with pytest.raises(DomainError):
        build_matrix(4, 10)
    with pytest.raises(DomainError):
        build_matrix(7, 0)
    with pytest.raises(DomainError):
        build_matrix(7, 10, start=0)


def test_start_parameter_shifts_window():
    base = build_matrix(7, 3, start=1)
    shifted = build_matrix(7, 3, start=4)
    assert shifted.bits[0] == base.bits[1]
    assert shifted.bits[1] == base.bits[2]


@pytest.mark.parametrize("ova,fname", sorted(GOLDEN_MATRICES.items()))
def test_matrices_match_golden(ova, fname):
    want = goldens.load_bit_rows(fname)
    got = build_matrix(ova, 10).bits
    assert got == want


def test_stats_ones_counts():
    assert matrix_stats(build_matrix(7, 10)).ones == 41
    assert matrix_stats(build_matrix(353, 10)).ones == 39


def test_stats_determinants_exact():
    assert matrix_stats(build_matrix(7, 10)).determinant == -6
    assert matrix_stats(build_matrix(353, 10)).determinant == 4
    assert matrix_stats(build_matrix(23, 10)).determinant == 18
    s = matrix_stats(build_matrix(337, 10))
    assert s.determinant == 0
    assert not s.nonsingular_over_rationals


def test_stats_sums_consistent():
    for ova in GOLDEN_MATRICES:
        s = matrix_stats(build_matrix(ova, 10))
        assert sum(s.row_sums) == s.ones == sum(s.col_sums)


def test_determinant_oracle_numpy():
    rng = np.random.default_rng(360)
    from ova360.matrix import _bareiss_determinant

    for _ in range(25):
        n = int(rng.integers(1, 7))
        a = rng.integers(-4, 5, size=(n, n))
        got = _bareiss_determinant(tuple(map(tuple, a.tolist())))
        want = round(float(np.linalg.det(a)))
        assert got == want


def test_zero_matrix_singular():
    s = matrix_stats(build_matrix(77, 1))
    assert s.determinant == 0 and not s.nonsingular_over_rationals


def test_density_examples():
    assert density(7, 1) == Fraction(1, 1)
    assert density(7, 100) == Fraction(41, 100)
    assert density(353, 100) == Fraction(39, 100)


def test_density_even_residue_is_zero():
    assert density(2, 100) == Fraction(0, 1)
    assert density(2, 6000) == Fraction(0, 1)


def test_density_matches_matrix_ones():
    for ova in (7, 353):
        ones = matrix_stats(build_matrix(ova, 10)).ones
        assert density(ova, 100) == Fraction(ones, 100)


def test_density_paths_agree():
    # per-value path (<= 5000) and bitmap path must agree
    slow = density(13, 5000)
    fast = density(13, 5001)
    hits_slow = slow.numerator * (5000 // slow.denominator)
    last = int(is_prime_big(13 + 360 * 5001))
    assert fast == Fraction(hits_slow + last, 5001)


def test_density_validation():
    with pytest.raises(DomainError):
        density(4, 100)
    with pytest.raises(DomainError):
        density(7, 0)


def test_residue_counts_match_pi():
    x = 10**4
    counts = residue_counts(x)
    assert sum(counts) == prime_count(x) == 1229
    assert counts[2] == 1 and counts[3] == 1 and counts[5] == 1
    # every count sits on a residue in C*
    cstar = residue_sets().Cstar
    for r, c in enumerate(counts):
        if c:
            assert r in cstar


def test_residue_counts_oracle():
    x = 10**4
    counts = residue_counts(x)
    want = [0] * 360
    for p in sieve_primes(x):
        want[p % 360] += 1
    assert list(counts) == want


def test_c_counts_plus_singletons_equal_pi():
    x = 10**6
    counts = residue_counts(x)
    c_sum = sum(counts[r] for r in residue_sets().C)
    assert c_sum + 3 == prime_count(x) == 78498


def test_dirichlet_ratio_basics():
    r = dirichlet_ratio(10**4, 13)
    assert r.count == residue_counts(10**4)[13]
    predicted = (10**4 / math.log(10**4)) / 96
    assert r.ratio == pytest.approx(r.count / predicted)


def test_dirichlet_singletons_allowed():
    r = dirichlet_ratio(10**4, 2)
    assert (r.count, r.ratio) == (1, None)
    assert dirichlet_ratio(10**4, 3).count == 1
    assert dirichlet_ratio(10**4, 5).count == 1


def test_dirichlet_validation():
    with pytest.raises(DomainError):
        dirichlet_ratio(999, 7)
    with pytest.raises(DomainError):
        dirichlet_ratio(10**4, 4)
    with pytest.raises(DomainError):
        dirichlet_ratio(10**4, 9)  # 9 divides 360, not a totative
    # 1 is a legal class (1801, 2521, ... are primes = 1 mod 360)
    assert dirichlet_ratio(10**4, 1).ratio is not None


def test_dirichlet_all_shape():
    reports = dirichlet_all(10**4)
    assert len(reports) == 99
    assert [r.ova for r in reports] == sorted(
        residue_sets().C | {2, 3, 5}
    )
    assert sum(r.count for r in reports) == prime_count(10**4)
    ratios = [r.ratio for r in reports if r.ratio is not None]
    assert len(ratios) == 96
    assert all(0.3 < x < 2.0 for x in ratios)


def test_twin_frequency_rotations():
    # twins with lower residue != 359 share their rotation; residue 359
    # pairs straddle the boundary (7559/7561 is the smallest case)
    limit = 10**6
    bm = odd_prime_bitmap(limit)
    idx = np.flatnonzero(bm)
    vals = 2 * idx + 1
    twins_lo = vals[:-1][(vals[1:] - vals[:-1]) == 2]
    twins_lo = twins_lo[twins_lo > 5]
    assert twins_lo.size > 8000
    res = twins_lo % 360
    same = twins_lo // 360 == (twins_lo + 2) // 360
    assert np.all(same[res != 359])
    assert not np.any(same[res == 359])
    assert 7559 in twins_lo[res == 359]
