"""Primes of the form k**2 + 1 and their residue structure mod 360.

Such primes occupy only 18 residue classes. Each class carries link
families: an affine k(alpha) = a_k*alpha + b_k whose squares-plus-one
trace a quadratic value(alpha) = A*alpha**2 + B*alpha + C staying in
the class. The family table ships as golden data and every row is
re-verified algebraically at load time, so a transcription slip cannot
pass silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cache

from . import goldens
from .errors import DomainError, GoldenDataError, UnknownOva
from .primality import is_prime_big

MODULUS = 360


@dataclass(frozen=True)
class LinkFamily:
    """One affine family k(alpha) within a fixed residue class.

    gamma0 is the rotation offset of the base value: value(alpha) =
    ova + 360*(n(alpha) + gamma0), so frequency(alpha) = n(alpha) +
    gamma0 whenever n(alpha) >= 0.
    """

    ova: int
    label: str
    a_k: int
    b_k: int
    a_n: int
    b_n: int
    c_n: int
    A: int
    B: int
    C: int
    gamma0: int

    def k(self, alpha: int) -> int:
        return self.a_k * alpha + self.b_k

    def n(self, alpha: int) -> int:
        return self.a_n * alpha * alpha + self.b_n * alpha + self.c_n

    def value(self, alpha: int) -> int:
        return self.A * alpha * alpha + self.B * alpha + self.C

    def verify(self) -> None:
        """Exact identities: value = k**2 + 1 as polynomials, the
        360-divisibility of the quadratic parts, and the n-form's
        consistency with the value form."""
        if self.A != self.a_k**2 or self.B != 2 * self.a_k * self.b_k \
                or self.C != self.b_k**2 + 1:
            raise GoldenDataError(f"{self.ova}/{self.label}: value != k^2+1")
        if self.A % MODULUS or self.B % MODULUS:
            raise GoldenDataError(
                f"{self.ova}/{self.label}: quadratic part not 0 mod 360"
            )
        if (self.C - self.ova) % MODULUS:
            raise GoldenDataError(
                f"{self.ova}/{self.label}: C != ova mod 360"
            )
        if self.a_n * MODULUS != self.A or self.b_n * MODULUS != self.B:
            raise GoldenDataError(
                f"{self.ova}/{self.label}: n-form disagrees with value form"
            )
        if self.gamma0 < 0 or (self.C - self.ova) // MODULUS - self.c_n != self.gamma0:
            raise GoldenDataError(
                f"{self.ova}/{self.label}: gamma0 inconsistent"
            )


@dataclass(frozen=True)
class FamilyRow:
    ova: int
    label: str
    alpha: int
    k: int
    n: int
    frequency: int | None
    value: int
    is_prime: bool | None
    skipped: bool
    note: str | None


@cache
def link_families() -> tuple[LinkFamily, ...]:
    """All shipped families, verified. Grouped by ova, label order."""
    rows = goldens.load_csv_rows("link_families.csv")
    fams = []
    for r in rows:
        ova, c = int(r["ova"]), int(r["C"])
        fam = LinkFamily(
            ova=ova, label=r["label"],
            a_k=int(r["a_k"]), b_k=int(r["b_k"]),
            a_n=int(r["a_n"]), b_n=int(r["b_n"]), c_n=int(r["c_n"]),
            A=int(r["A"]), B=int(r["B"]), C=c,
            gamma0=(c - ova) // MODULUS - int(r["c_n"]),
        )
        fam.verify()
        fams.append(fam)
    fams.sort(key=lambda f: (f.ova, f.label))
    return tuple(fams)


@cache
def golden_landau_residues() -> tuple[int, ...]:
    return goldens.load_int_lines("landau_residues.txt")


def enumerate_k2_plus_1(limit: int) -> list[int]:
    """Ascending primes of the form k**2 + 1 up to limit."""
    if limit < 2:
        raise DomainError(f"limit must be >= 2, got {limit}")
    out = [2] if limit >= 2 else []
    # only even k can give an odd prime beyond k=1
    for k in range(2, math.isqrt(limit - 1) + 1, 2):
        v = k * k + 1
        if is_prime_big(v):
            out.append(v)
    return out


def landau_residues(limit: int) -> frozenset[int]:
    """Distinct residues of primes k**2 + 1 <= limit."""
    return frozenset(v % MODULUS for v in enumerate_k2_plus_1(limit))


@dataclass(frozen=True)
class LandauDiff:
    limit: int
    computed: tuple[int, ...]
    golden: tuple[int, ...]
    missing_from_computed: tuple[int, ...]
    extra_in_computed: tuple[int, ...]

    @property
    def is_subset(self) -> bool:
        return not self.extra_in_computed


def landau_diff(limit: int, golden_dir=None) -> LandauDiff:
    computed = tuple(sorted(landau_residues(limit)))
    golden = goldens.load_int_lines("landau_residues.txt", golden_dir)
    cs, gs = set(computed), set(golden)
    return LandauDiff(
        limit=limit,
        computed=computed,
        golden=golden,
        missing_from_computed=tuple(sorted(gs - cs)),
        extra_in_computed=tuple(sorted(cs - gs)),
    )


def quad_families(ova: int, alphas) -> list[FamilyRow]:
    """Evaluate every family registered under ova at each alpha.

    Rows with n(alpha) < 0 are emitted with skipped=True and a note
    instead of a primality verdict; negative alpha is otherwise fine.
    """
    fams = [f for f in link_families() if f.ova == ova]
    if not fams:
        raise UnknownOva(f"no link family for residue {ova}")
    out = []
    for fam in fams:
        for alpha in alphas:
            k = fam.k(alpha)
            n = fam.n(alpha)
            v = fam.value(alpha)
            if v != k * k + 1:
                raise AssertionError(
                    f"{ova}/{fam.label}: value({alpha}) != k^2+1"
                )
            if n < 0:
                out.append(FamilyRow(
                    ova, fam.label, alpha, k, n, None, v, None,
                    skipped=True, note=f"n({alpha}) = {n} < 0",
                ))
                continue
            if v % MODULUS != ova % MODULUS:
                raise AssertionError(
                    f"{ova}/{fam.label}: value({alpha}) mod 360 != ova"
                )
            out.append(FamilyRow(
                ova, fam.label, alpha, k, n, n + fam.gamma0, v,
                is_prime_big(v), skipped=False, note=None,
            ))
    return out


def link_family_161(alphas) -> list[FamilyRow]:
    """The residue-161 A-family table: k = 180*alpha + 40, base value
    1601, frequency = n(alpha) + 4."""
    rows = quad_families(161, alphas)
    return [r for r in rows if r.label == "A"]


@cache
def golden_161_rows() -> tuple[dict[str, int], ...]:
    out = []
    for r in goldens.load_csv_rows("link_161_rows.csv"):
        out.append({k: int(v) for k, v in r.items()})
    return tuple(out)
