"""Prime-indicator matrices per residue class and density diagnostics.

A k x k matrix for residue z marks which rotations G = 1..k**2 make
z + 360*G prime. Densities are exact rationals; the Dirichlet-style
diagnostic compares each class's prime count against the equidistribution
prediction (x/ln x)/96. Determinants are computed exactly over the
integers (Bareiss fraction-free elimination) so invertibility gets an
exact verdict instead of a floating-point guess: these matrices are
not invertible in general (residue 337 gives determinant 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .ova import MODULUS, residue_sets
from .primality import is_prime_big, odd_prime_bitmap

MAX_DIRICHLET_X = 1 << 40
_SINGLETONS = (2, 3, 5)


@dataclass(frozen=True)
class OvaMatrix:
    ova: int
    k: int
    start: int
    bits: tuple[tuple[int, ...], ...]

    def row(self, i: int) -> tuple[int, ...]:
        return self.bits[i - 1]


@dataclass(frozen=True)
class MatrixStats:
    ones: int
    row_sums: tuple[int, ...]
    col_sums: tuple[int, ...]
    determinant: int
    nonsingular_over_rationals: bool


@dataclass(frozen=True)
class DensityReport:
    x: int
    ova: int
    count: int
    ratio: float | None


def _require_cstar(ova: int) -> None:
    if ova not in residue_sets().Cstar:
        raise DomainError(f"residue {ova} not in C*")


def build_matrix(ova: int, k: int, start: int = 1) -> OvaMatrix:
    """k x k indicator grid: entry (i, j) is 1 iff ova + 360*G is
    prime at rotation G = start - 1 + k*(i-1) + j (1-based i, j)."""
    _require_cstar(ova)
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if start < 1:
        raise DomainError(f"start must be >= 1, got {start}")
    rows = []
    for i in range(1, k + 1):
        base = start - 1 + k * (i - 1)
        rows.append(tuple(
            int(is_prime_big(ova + MODULUS * (base + j)))
            for j in range(1, k + 1)
        ))
    return OvaMatrix(ova, k, start, tuple(rows))


def _bareiss_determinant(bits: tuple[tuple[int, ...], ...]) -> int:
    """Fraction-free elimination; exact for integer matrices."""
    n = len(bits)
    m = [list(r) for r in bits]
    sign = 1
    prev = 1
    for c in range(n - 1):
        if m[c][c] == 0:
            for r in range(c + 1, n):
                if m[r][c] != 0:
                    m[c], m[r] = m[r], m[c]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                m[r][j] = (m[r][j] * m[c][c] - m[r][c] * m[c][j]) // prev
            m[r][c] = 0
        prev = m[c][c]
    return sign * m[n - 1][n - 1]


def matrix_stats(m: OvaMatrix) -> MatrixStats:
    arr = np.array(m.bits, dtype=np.int64)
    det = _bareiss_determinant(m.bits)
    return MatrixStats(
        ones=int(arr.sum()),
        row_sums=tuple(arr.sum(axis=1).tolist()),
        col_sums=tuple(arr.sum(axis=0).tolist()),
        determinant=det,
        nonsingular_over_rationals=det != 0,
    )


def density(ova: int, rotations: int) -> Fraction:
    """Exact fraction of rotations G in [1, rotations] with
    ova + 360*G prime."""
    _require_cstar(ova)
    if rotations < 1:
        raise DomainError(f"rotations must be >= 1, got {rotations}")
    if ova % 2 == 0:
        hits = 0  # ova + 360*G is even and > 2 for every G >= 1
    elif rotations <= 5000:
        hits = sum(
            1 for g in range(1, rotations + 1)
            if is_prime_big(ova + MODULUS * g)
        )
    else:
        top = ova + MODULUS * rotations
        bm = odd_prime_bitmap(top)
        vals = ova + MODULUS * np.arange(1, rotations + 1, dtype=np.int64)
        hits = int(bm[vals >> 1].sum())
    return Fraction(hits, rotations)


@lru_cache(maxsize=4)
def residue_counts(x: int) -> tuple[int, ...]:
    """count[r] = number of primes <= x congruent to r mod 360."""
    if x < 2:
        return tuple([0] * MODULUS)
    counts = np.zeros(MODULUS, dtype=np.int64)
    bm = odd_prime_bitmap(x)
    chunk = 1 << 22
    for s in range(0, bm.size, chunk):
        vals = 2 * (np.flatnonzero(bm[s:s + chunk]) + s) + 1
        counts += np.bincount(vals % MODULUS, minlength=MODULUS)
    counts[2] += 1  # the even prime
    return tuple(counts.tolist())


def prime_count(x: int) -> int:
    return sum(residue_counts(x))


def dirichlet_ratio(x: int, ova: int) -> DensityReport:
    """Exact class count with the equidistribution ratio
    count * 96 / (x / ln x).

    The three singleton residues 2, 3, 5 are legal inputs with the
    ratio omitted (their counts are bounded); other residues outside
    C are a domain error.
    """
    if x < 1000:
        raise DomainError(f"x must be >= 1000, got {x}")
    if x > MAX_DIRICHLET_X:
        raise DomainError(f"x {x} exceeds bound {MAX_DIRICHLET_X}")
    sets = residue_sets()
    if ova in _SINGLETONS:
        count = residue_counts(x)[ova]
        return DensityReport(x=x, ova=ova, count=count, ratio=None)
    if ova not in sets.C:
        raise DomainError(f"residue {ova} not in C")
    count = residue_counts(x)[ova]
    ratio = count * 96 / (x / math.log(x))
    return DensityReport(x=x, ova=ova, count=count, ratio=ratio)


def dirichlet_all(x: int) -> list[DensityReport]:
    """Reports for every residue in C plus the three singletons,
    ordered by residue."""
    sets = residue_sets()
    order = sorted(sets.C | set(_SINGLETONS))
    return [dirichlet_ratio(x, z) for z in order]
