"""Mersenne primes classified by residue modulo 360.

2**p - 1 mod 360 takes only six values over prime p: the singular
residues 3 (p=2) and 7 (p=3), and for p > 3 one of {31, 127, 247, 271}
determined by p mod 12. Each non-singular class carries an arithmetic
progression of exponents and an exact K-sequence; this module also
hosts Lucas-Lehmer testing, an exponent scanner, neighbor-compositeness
checks, and the convergent sum of Mersenne-prime reciprocals.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Iterable

from . import goldens
from .errors import BoundError, DomainError, NotMersennePrime
from .ova import residue_sets
from .primality import is_prime, is_prime_big

MAX_LL_EXPONENT = 10000
MAX_KSEQ_INDEX = 2000
MAX_SUM_DIGITS = 200


class MersenneClass(enum.Enum):
    SINGULAR_3 = "Singular3"
    SINGULAR_7 = "Singular7"
    CLASS_31 = "Class31"
    CLASS_127 = "Class127"
    CLASS_247 = "Class247"
    CLASS_271 = "Class271"

    @property
    def residue(self) -> int:
        return _CLASS_RESIDUE[self]


_CLASS_RESIDUE = {
    MersenneClass.SINGULAR_3: 3,
    MersenneClass.SINGULAR_7: 7,
    MersenneClass.CLASS_31: 31,
    MersenneClass.CLASS_127: 127,
    MersenneClass.CLASS_247: 247,
    MersenneClass.CLASS_271: 271,
}

# p mod 12 -> class, for prime p > 3
_MOD12_CLASS = {
    1: MersenneClass.CLASS_271,
    5: MersenneClass.CLASS_31,
    7: MersenneClass.CLASS_127,
    11: MersenneClass.CLASS_247,
}

# class -> (progression offset c with exponent = 12*i - c, K subtrahend t)
# where K_i = (2**(exponent-3) - t) / 45 and residue = 8t - 1
_CLASS_SEQ = {
    MersenneClass.CLASS_31: (7, 4),
    MersenneClass.CLASS_127: (5, 16),
    MersenneClass.CLASS_247: (1, 31),
    MersenneClass.CLASS_271: (11, 34),
}


@dataclass(frozen=True)
class MersenneClassification:
    exponent: int
    residue: int
    class_label: MersenneClass
    exponent_mod12: int


@dataclass(frozen=True)
class KSequenceEntry:
    class_label: MersenneClass
    index: int
    exponent: int
    K: int


@dataclass(frozen=True)
class ScanReport:
    max_p: int
    tested: int
    mersenne_exponents: tuple[int, ...]
    skipped_by_class: int


@dataclass(frozen=True)
class SingularReport:
    max_p: int
    holds: bool
    residue3_exponents: tuple[int, ...]
    residue7_exponents: tuple[int, ...]
    residues_observed: tuple[int, ...]


@dataclass(frozen=True)
class MersenneProperties:
    """Congruence and neighbor-compositeness facts about one Mersenne
    prime. Fields are None where the underlying claim does not apply
    (the residue-conditioned neighbors, and the mod-6 statements that
    exclude p=2)."""

    exponent: int
    residue: int
    mod4_is_3: bool
    mod6_is_1: bool | None
    plus2_composite: bool | None
    minus2_composite: bool | None
    plus4_composite: bool | None
    plus_6n_minus_4_composite: bool | None
    not_germain: bool


def _require_prime(p: int) -> None:
    if not is_prime_big(p):
        raise DomainError(f"exponent {p} is not prime")


def mersenne_residue(p: int) -> int:
    """(2**p - 1) mod 360 by modular exponentiation; p prime."""
    _require_prime(p)
    return (pow(2, p, 360) - 1) % 360


def classify_exponent(p: int) -> MersenneClassification:
    """Residue class of 2**p - 1. Classification is of the residue;
    the Mersenne number itself may be composite (e.g. p=11)."""
    _require_prime(p)
    residue = (pow(2, p, 360) - 1) % 360
    if p == 2:
        label = MersenneClass.SINGULAR_3
    elif p == 3:
        label = MersenneClass.SINGULAR_7
    else:
        label = _MOD12_CLASS[p % 12]
    if residue != label.residue:
        raise AssertionError(f"residue {residue} disagrees with {label}")
    return MersenneClassification(p, residue, label, p % 12)


@cache
def criteria_filter() -> frozenset[int]:
    """Survivors of the mechanical criteria over C*.

    Keeps residues z with z+1 divisible by 8 (A) but not by 3 (B) or
    5 (C), excluding {103, 223, 343} (D) and 151 (E); the singular
    residue 3 is kept by fiat. The result is {3,7,31,127,247,271}.
    """
    survivors = {3}
    for z in residue_sets().Cstar:
        if (z + 1) % 8 != 0:
            continue
        if (z + 1) % 3 == 0 or (z + 1) % 5 == 0:
            continue
        if z in (103, 223, 343) or z == 151:
            continue
        survivors.add(z)
    return frozenset(survivors)


def criteria_eliminations() -> dict[str, tuple[int, ...]]:
    """Residues of C* removed by each criterion, keyed A-E.

    A residue is charged to the first criterion that rejects it, in
    the order A (8 | z+1), B (3 | z+1), C (5 | z+1), D (z in
    {103,223,343}), E (z = 151).
    """
    out: dict[str, list[int]] = {k: [] for k in "ABCDE"}
    for z in sorted(residue_sets().Cstar):
        if z == 3:
            continue
        if (z + 1) % 8 != 0:
            out["A"].append(z)
        elif (z + 1) % 3 == 0:
            out["B"].append(z)
        elif (z + 1) % 5 == 0:
            out["C"].append(z)
        elif z in (103, 223, 343):
            out["D"].append(z)
        elif z == 151:
            out["E"].append(z)
    return {k: tuple(v) for k, v in out.items()}


def k_sequence(class_label, indices: Iterable[int]) -> list[KSequenceEntry]:
    """K-sequence entries for a non-singular class.

    Each entry satisfies residue + 360*K = 2**exponent - 1 exactly;
    the identity is re-verified in arbitrary precision before the
    entry is returned. Class271 starts at index 2 (index 1 would mean
    exponent 1 and a negative K).
    """
    label = _coerce_class(class_label)
    if label in (MersenneClass.SINGULAR_3, MersenneClass.SINGULAR_7):
        raise DomainError(f"{label.value} has no K-sequence")
    offset, t = _CLASS_SEQ[label]
    first = 2 if label is MersenneClass.CLASS_271 else 1
    out = []
    for i in indices:
        if i < first:
            raise DomainError(
                f"{label.value} index starts at {first}, got {i}"
                + (" (index 1 gives the degenerate exponent 1)"
                   if label is MersenneClass.CLASS_271 else "")
            )
        if i > MAX_KSEQ_INDEX:
            raise BoundError(f"index {i} exceeds bound {MAX_KSEQ_INDEX}")
        exponent = 12 * i - offset
        num = (1 << (exponent - 3)) - t
        if num % 45 != 0:
            raise AssertionError(f"K not integral at {label.value} index {i}")
        k = num // 45
        if label.residue + 360 * k != (1 << exponent) - 1:
            raise AssertionError(f"identity fails at {label.value} index {i}")
        out.append(KSequenceEntry(label, i, exponent, k))
    return out


def _coerce_class(label) -> MersenneClass:
    if isinstance(label, MersenneClass):
        return label
    key = str(label).lower().removeprefix("class")
    for m in MersenneClass:
        if m.value.lower() == str(label).lower() or str(m.residue) == key:
            return m
    raise DomainError(f"unknown Mersenne class {label!r}")


def lucas_lehmer(p: int, max_p: int = MAX_LL_EXPONENT) -> bool:
    """True iff 2**p - 1 is prime, for odd prime p <= max_p.

    The squaring loop reduces mod 2**p - 1 by folding the high bits
    (s & m) + (s >> p), which keeps every intermediate below 2m.
    """
    if p > max_p:
        raise BoundError(f"exponent {p} exceeds Lucas-Lehmer bound {max_p}")
    if p == 2 or not is_prime(p):
        raise DomainError(f"exponent {p} must be an odd prime")
    m = (1 << p) - 1
    s = 4 % m
    for _ in range(p - 2):
        s = s * s - 2
        s = (s & m) + (s >> p)
        if s >= m:
            s -= m
    return s == 0


def scan_exponents(max_p: int, max_ll: int = MAX_LL_EXPONENT) -> ScanReport:
    """Search exponents <= max_p for Mersenne primes.

    Walks the four class progressions 12i-11, 12i-7, 12i-5, 12i-1
    (every odd exponent > 3 lies on exactly one), skipping composite
    progression members, and runs Lucas-Lehmer on the prime ones; the
    singular exponents 2 and 3 are checked directly. skipped_by_class
    counts the composite progression members discarded without a test.
    """
    if max_p < 2:
        raise DomainError(f"max_p must be >= 2, got {max_p}")
    if max_p > max_ll:
        raise BoundError(f"max_p {max_p} exceeds Lucas-Lehmer bound {max_ll}")
    found = [2] if is_prime_big(3) else []
    tested = 1
    if max_p >= 3:
        tested += 1
        if is_prime_big(7):
            found.append(3)
    skipped = 0
    candidates = []
    for offset, _ in _CLASS_SEQ.values():
        e = 12 - offset
        while e <= max_p:
            if e > 3:
                candidates.append(e)
            e += 12
    for e in sorted(candidates):
        if not is_prime(e):
            skipped += 1
            continue
        tested += 1
        if lucas_lehmer(e, max_ll):
            found.append(e)
    return ScanReport(max_p, tested, tuple(sorted(found)), skipped)


def singular_class_check(max_p: int) -> SingularReport:
    """Verify residues 3 and 7 occur only at exponents 2 and 3."""
    if max_p < 3:
        raise DomainError(f"max_p must be >= 3, got {max_p}")
    r3, r7, seen = [], [], set()
    for p in range(2, max_p + 1):
        if not is_prime(p):
            continue
        r = (pow(2, p, 360) - 1) % 360
        seen.add(r)
        if r == 3:
            r3.append(p)
        elif r == 7:
            r7.append(p)
    return SingularReport(
        max_p=max_p,
        holds=(r3 == [2] and r7 == [3]),
        residue3_exponents=tuple(r3),
        residue7_exponents=tuple(r7),
        residues_observed=tuple(sorted(seen)),
    )


@cache
def known_exponents() -> tuple[int, ...]:
    """The known Mersenne-prime exponents shipped as golden data."""
    return goldens.load_int_lines("mersenne_exponents.txt")


def inverse_sum(num_terms: int, precision_digits: int) -> str:
    """Partial sum of reciprocals of Mersenne primes as a decimal
    string, truncated (not rounded) to precision_digits places.

    Terms come from the shipped known-exponent list; the arithmetic
    is exact rational throughout.
    """
    known = known_exponents()
    if not 1 <= num_terms <= len(known):
        raise BoundError(
            f"num_terms must be in [1, {len(known)}], got {num_terms}"
        )
    if not 1 <= precision_digits <= MAX_SUM_DIGITS:
        raise BoundError(
            f"precision_digits must be in [1, {MAX_SUM_DIGITS}], "
            f"got {precision_digits}"
        )
    total = inverse_sum_fraction(num_terms)
    scaled = (total.numerator * 10**precision_digits) // total.denominator
    digits = str(scaled).rjust(precision_digits, "0")
    return f"0.{digits}"


def inverse_sum_fraction(num_terms: int) -> Fraction:
    known = known_exponents()
    if not 1 <= num_terms <= len(known):
        raise BoundError(
            f"num_terms must be in [1, {len(known)}], got {num_terms}"
        )
    total = Fraction(0)
    for p in known[:num_terms]:
        total += Fraction(1, (1 << p) - 1)
    return total


def mersenne_properties(
    p: int, sample_range: int = 50, max_ll: int = MAX_LL_EXPONENT
) -> MersenneProperties:
    """Evaluate the congruence and neighbor-compositeness theorems
    for the Mersenne prime 2**p - 1.

    Raises NotMersennePrime when 2**p - 1 is composite. The 6n-4
    family is sampled over |n| <= sample_range (members equal to 3 or
    below 4 are outside the claim and skipped). The mod-6 and 6n-4
    fields are None at p=2, where M=3 is not 1 mod 6.
    """
    _require_prime(p)
    if p == 2:
        m = 3
    else:
        if not lucas_lehmer(p, max_ll):
            raise NotMersennePrime(f"2**{p}-1 is composite")
        m = (1 << p) - 1
    cls = classify_exponent(p)
    mod6 = None if p == 2 else m % 6 == 1
    plus2 = None if m <= 3 else not is_prime_big(m + 2)
    minus2 = plus4 = None
    if cls.class_label in (MersenneClass.CLASS_127, MersenneClass.CLASS_247):
        minus2 = not is_prime_big(m - 2)
    if cls.class_label in (MersenneClass.CLASS_31, MersenneClass.CLASS_271):
        plus4 = not is_prime_big(m + 4)
    family = None
    if p > 2:
        family = all(
            not is_prime_big(m + 6 * n - 4)
            for n in range(-sample_range, sample_range + 1)
            if m + 6 * n - 4 >= 4
        )
    return MersenneProperties(
        exponent=p,
        residue=cls.residue,
        mod4_is_3=m % 4 == 3,
        mod6_is_1=mod6,
        plus2_composite=plus2,
        minus2_composite=minus2,
        plus4_composite=plus4,
        plus_6n_minus_4_composite=family,
        not_germain=not is_prime_big(2 * m + 1),
    )
