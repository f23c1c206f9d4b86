"""Goldbach decompositions and the Bertrand-interval construction.

The headline scan verifies that every even n in (4, limit] splits into
two odd primes, recording the largest "smallest prime" seen. The
construction helpers reproduce the interval arithmetic around the
midpoint n/2: a prime rho_f placed in [n/2, n-2) determines f and k,
and prime pairs drawn from the two open windows always satisfy
n/2 + 1 < sum <= n. Whether a sampled pair hits n exactly is reported
as an observation, never assumed.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BoundError, CounterexampleFound, DomainError
from .ova import MODULUS, decompose, residue_sets
from .primality import is_prime, is_prime_big, odd_prime_bitmap

MAX_SCAN_LIMIT = 10**8


class HalfParity(enum.Enum):
    ODD_HALF = "OddHalf"
    EVEN_HALF = "EvenHalf"


@dataclass(frozen=True)
class GoldbachWitness:
    n: int
    p: int
    q: int


@dataclass(frozen=True)
class GoldbachScanReport:
    limit: int
    checked: int
    max_smallest_p: int
    argmax_n: int
    failures: tuple[int, ...]
    four_prime_n: int | None
    four_prime_witness: tuple[int, int, int, int] | None


@dataclass(frozen=True)
class BertrandConstruction:
    n: int
    rho_f: int
    f: int
    k: Fraction
    half_parity: HalfParity


@dataclass(frozen=True)
class IntervalSumReport:
    n: int
    sampled: int
    pairs_checked: int
    violations: tuple[tuple[int, int, int], ...]
    empty_windows: int
    exact_pairs: tuple[tuple[int, int, int], ...]

    @property
    def has_exact(self) -> bool:
        return bool(self.exact_pairs)


@dataclass(frozen=True)
class SymmetricPairReport:
    n: int
    exists_symmetric: bool
    k_values: tuple[int, ...]


@dataclass(frozen=True)
class CombinationReport:
    p1: int
    p2: int
    ova_sum: int
    gamma_sum: int
    candidates: tuple[int, ...]
    hits: tuple[int, ...]


def _check_even(n: int, minimum: int) -> None:
    if n % 2 != 0 or n < minimum:
        raise DomainError(f"n must be even and >= {minimum}, got {n}")


def decompose_even(n: int) -> GoldbachWitness:
    """Witness n = p + q over odd primes with the smallest possible p."""
    _check_even(n, 6)
    p = 3
    while p <= n // 2:
        if is_prime(p) and is_prime_big(n - p):
            return GoldbachWitness(n, p, n - p)
        p += 2
    raise CounterexampleFound(f"no Goldbach decomposition of {n}")


def scan(limit: int, workers: int = 1) -> GoldbachScanReport:
    """Verify all even n in (4, limit], tracking the largest smallest
    prime and collecting failures (which would be counterexamples).

    The report also carries a four-odd-primes spot witness for the
    largest even n >= 12 in range, built as 3 + 3 + decompose(n-6);
    this derives from the pair scan rather than an independent method.
    """
    _check_even(limit, 6)
    if limit > MAX_SCAN_LIMIT:
        raise BoundError(f"limit {limit} exceeds scan bound {MAX_SCAN_LIMIT}")
    if workers < 1:
        raise DomainError(f"workers must be >= 1, got {workers}")
    bitmap = odd_prime_bitmap(limit)
    evens = np.arange(6, limit + 1, 2, dtype=np.int64)
    best = _scan_chunk(evens, bitmap) if workers == 1 else _scan_parallel(
        evens, bitmap, workers
    )
    failures = tuple(evens[best == 0].tolist())
    am = int(np.argmax(best))
    four_n = four_wit = None
    if limit >= 12:
        four_n = limit
        w = decompose_even(four_n - 6)
        four_wit = (3, 3, w.p, w.q)
    return GoldbachScanReport(
        limit=limit,
        checked=int(evens.size),
        max_smallest_p=int(best.max()),
        argmax_n=int(evens[am]),
        failures=failures,
        four_prime_n=four_n,
        four_prime_witness=four_wit,
    )


def _scan_chunk(evens: np.ndarray, bitmap: np.ndarray) -> np.ndarray:
    # peel off primes p ascending; each iteration resolves every even n
    # with smallest prime exactly p, so the remainder array shrinks fast
    best = np.zeros(evens.size, dtype=np.int64)
    rem = evens
    rem_ids = np.arange(evens.size)
    p = 3
    while rem.size:
        if is_prime(p):
            q = rem - p
            ok = q >= 3
            ok[ok] = bitmap[q[ok] >> 1]
            best[rem_ids[ok]] = p
            rem = rem[~ok]
            rem_ids = rem_ids[~ok]
        p += 2
        if p > evens[-1]:
            break
    return best


def _scan_parallel(evens, bitmap, workers: int) -> np.ndarray:
    chunks = [c for c in np.array_split(np.arange(evens.size), workers) if c.size]
    out = np.zeros(evens.size, dtype=np.int64)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futs = [pool.submit(_scan_chunk, evens[idx], bitmap) for idx in chunks]
        for idx, fut in zip(chunks, futs):
            out[idx] = fut.result()
    return out


def scan_witnesses(limit: int) -> list[GoldbachWitness]:
    """Smallest-p witness for every even n in (4, limit], ascending."""
    _check_even(limit, 6)
    if limit > MAX_SCAN_LIMIT:
        raise BoundError(f"limit {limit} exceeds scan bound {MAX_SCAN_LIMIT}")
    bitmap = odd_prime_bitmap(limit)
    evens = np.arange(6, limit + 1, 2, dtype=np.int64)
    best = _scan_chunk(evens, bitmap)
    if not best.all():
        missing = evens[best == 0].tolist()
        raise CounterexampleFound(f"no decomposition for {missing}")
    return [
        GoldbachWitness(int(n), int(p), int(n - p))
        for n, p in zip(evens.tolist(), best.tolist())
    ]


def bertrand_construction(n: int) -> BertrandConstruction:
    """Largest prime rho_f in [n/2, n-2), with f and k solved from
    rho_f = n - (2f+1) and the parity-split k formula."""
    _check_even(n, 8)
    half = n // 2
    rho_f = None
    for c in range(n - 3, half - 1, -1):
        if is_prime_big(c):
            rho_f = c
            break
    if rho_f is None:
        raise CounterexampleFound(f"no prime in [{half}, {n - 2})")
    f, rem = divmod(n - 1 - rho_f, 2)
    if rem:
        raise AssertionError(f"rho_f {rho_f} has wrong parity for n={n}")
    if half % 2 == 1:
        parity = HalfParity.ODD_HALF
        k = Fraction(n, 4) - Fraction(1, 2) - f
    else:
        parity = HalfParity.EVEN_HALF
        k = Fraction(n, 4) - f
    if not 0 < f <= Fraction(n, 4) - Fraction(1, 2):
        raise AssertionError(f"f={f} outside (0, n/4 - 1/2] for n={n}")
    return BertrandConstruction(n, rho_f, f, k, parity)


def _primes_in_open(lo: Fraction, hi: Fraction) -> list[int]:
    first = int(lo) + 1
    last = -int(-hi) - 1  # largest integer strictly below hi
    return [m for m in range(max(first, 2), last + 1) if is_prime_big(m)]


def interval_sum_check(n: int, samples: int | None = None) -> IntervalSumReport:
    """Enumerate prime pairs from the two open windows around n/2 for
    each admissible f, and check n/2 + 1 < sum <= n for every pair.

    Violations cannot occur (the bound is an arithmetic consequence of
    the window endpoints); they are collected rather than asserted so
    an implementation fault would surface as data. Whether some pair
    sums to n exactly is reported as an observation: for n = 100 no
    window pair does, because the lower window is open at its upper
    endpoint and excludes the matching prime.
    """
    _check_even(n, 12)
    half = Fraction(n, 2)
    quarter = Fraction(n, 4)
    odd_half = (n // 2) % 2 == 1
    f_max = int(quarter - Fraction(1, 2))
    fs = range(1, f_max + 1)
    if samples is not None:
        fs = fs[:samples]
    pairs = violations = empty = 0
    viol_list: list[tuple[int, int, int]] = []
    exact: list[tuple[int, int, int]] = []
    for f in fs:
        k = quarter - Fraction(1, 2) - f if odd_half else quarter - f
        upper = _primes_in_open(quarter + Fraction(1, 2) + k, half + 1 + 2 * k)
        lower = _primes_in_open(quarter + Fraction(1, 2) - k, half + 1 - 2 * k)
        if not upper or not lower:
            empty += 1
            continue
        for rho in upper:
            for q in lower:
                pairs += 1
                if not half + 1 < rho + q <= n:
                    viol_list.append((f, rho, q))
                if rho + q == n:
                    exact.append((f, rho, q))
    return IntervalSumReport(
        n=n,
        sampled=len(fs),
        pairs_checked=pairs,
        violations=tuple(viol_list),
        empty_windows=empty,
        exact_pairs=tuple(exact),
    )


def symmetric_pair_check(n: int) -> SymmetricPairReport:
    """Search for prime pairs placed symmetrically about n/2.

    For odd n/2 the members are n/2 +- 2k (k >= 0); for even n/2 they
    are n/2 +- (2k-1) (k >= 1), keeping both members odd. All working
    k up to n/4 are returned; existence is equivalent to n having a
    Goldbach decomposition.
    """
    _check_even(n, 6)
    half = n // 2
    ks = []
    for k in range(0, n // 4 + 1):
        offset = 2 * k if half % 2 == 1 else 2 * k - 1
        if offset < 0:
            continue
        lo, hi = half - offset, half + offset
        if lo < 3:
            continue
        if is_prime_big(lo) and is_prime_big(hi):
            ks.append(k)
    return SymmetricPairReport(n, bool(ks), tuple(ks))


def average_of_two_primes(m: int) -> tuple[int, int]:
    """Primes (p, q) with p + q = 2m; the m=2 case uses (2, 2)."""
    if m < 2:
        raise DomainError(f"m must be >= 2, got {m}")
    if m == 2:
        return (2, 2)
    w = decompose_even(2 * m)
    return (w.p, w.q)


def ova_combination_check(p1: int, p2: int) -> CombinationReport:
    """Residue combinations covering p1 + p2 + 2.

    candidates: residues a in C* whose complement to ova(p1)+ova(p2)+2
    is prime. hits: candidates a where a + 360*(gamma1+gamma2) is also
    prime. Non-empty hits is a conjecture, not a fact: empty hits do
    occur (e.g. the prime pair 1919881, 8440231), so callers must
    treat an empty tuple as a finding, never an error.
    """
    for p in (p1, p2):
        if not is_prime_big(p):
            raise DomainError(f"{p} is not prime")
    d1, d2 = decompose(p1), decompose(p2)
    total = d1.ova + d2.ova + 2
    gsum = d1.frequency + d2.frequency
    base = MODULUS * gsum
    cands = [
        a for a in sorted(residue_sets().Cstar)
        if total - a >= 2 and is_prime_big(total - a)
    ]
    hits = [a for a in cands if is_prime_big(a + base)]
    return CombinationReport(
        p1=p1, p2=p2, ova_sum=total, gamma_sum=gsum,
        candidates=tuple(cands), hits=tuple(hits),
    )
