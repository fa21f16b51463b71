"""Enumeration of the branch signatures that admit a large automorphism group.

A group is large exactly when the cover has genus-0 quotient and
0 < mu < 1/2.  The search walks sorted index tuples and uses only that
mu grows in every index: once the smallest completion of a prefix reaches
1/2 every larger prefix does too.  A prefix whose last free index can grow
without bound becomes a family instead of a list.
"""
from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import floor
from typing import Iterator, NamedTuple

import numpy as np

from .signatures import HALF, Affine, Signature, SignatureFamily, reduced_euler

BRANCH_COUNTS = (3, 4)
COMPLETENESS_BOUND = 200


def _limit(s: int, prefix: tuple[int, ...]) -> Fraction:
    """mu as every index not in ``prefix`` tends to infinity."""
    return (s - 2) - sum((Fraction(1, v) for v in prefix), Fraction(0))


def _least_positive(s: int, prefix: tuple[int, ...], start: int) -> int | None:
    """Smallest last index >= start making mu positive, None if there is none."""
    lim = _limit(s, prefix)
    if lim <= 0:
        return None
    return max(start, floor(1 / lim) + 1)


@dataclass(frozen=True, order=True)
class TwoParameterFamily:
    """{fixed..., m, n} with m <= n free; boundary cases come from mu > 0."""

    quotient_genus: int
    fixed_indices: tuple[int, ...]
    first_lower: int

    @property
    def s(self) -> int:
        return len(self.fixed_indices) + 2

    def min_last(self, m: int) -> int:
        n = _least_positive(self.s, self.fixed_indices + (m,), m)
        assert n is not None, m
        return n

    def thresholds(self) -> tuple[tuple[int, int], ...]:
        """The values of m whose least admissible n exceeds m itself."""
        out = []
        m = self.first_lower
        while True:
            n = self.min_last(m)
            if n == m:
                # 1/limit decreases in m, so later thresholds are all trivial
                return tuple(out)
            out.append((m, n))
            m += 1

    def signatures(self, max_param: int) -> Iterator[Signature]:
        for m in range(self.first_lower, max_param + 1):
            for n in range(self.min_last(m), max_param + 1):
                yield Signature(self.quotient_genus, self.fixed_indices + (m, n))

    def contains(self, sig: Signature) -> bool:
        if sig.quotient_genus != self.quotient_genus or sig.s != self.s:
            return False
        k = len(self.fixed_indices)
        if sig.indices[:k] != self.fixed_indices:
            return False
        m, n = sig.indices[k:]
        return m >= self.first_lower and n >= self.min_last(m)

    def __str__(self) -> str:
        conds = ", ".join(f"if m={m} then n>={n}" for m, n in self.thresholds())
        head = "{" + ",".join(map(str, self.fixed_indices)) + f",m,n}}, {self.first_lower} <= m <= n"
        return f"{head}; {conds}" if conds else head


Family = SignatureFamily | TwoParameterFamily


class LargeSignatures(NamedTuple):
    families: list[Family]
    exceptional: list[Signature]


def _family_key(f: Family) -> tuple:
    return (-(len(f.fixed_indices) + (2 if isinstance(f, TwoParameterFamily) else len(f.parametric))), f.fixed_indices)


def _walk(s: int, prefix: tuple[int, ...], families: list[Family], exceptional: list[Signature]) -> None:
    start = prefix[-1] if prefix else 2
    remaining = s - len(prefix)
    lim = _limit(s, prefix)
    if remaining == 1:
        low = _least_positive(s, prefix, start)
        if low is None:
            return
        if lim <= HALF:
            families.append(SignatureFamily(0, prefix, (Affine(1),), low))
            return
        n = low
        while reduced_euler(Signature(0, prefix + (n,))) < HALF:
            exceptional.append(Signature(0, prefix + (n,)))
            n += 1
        return
    if lim <= HALF:
        if remaining != 2:
            raise NotImplementedError("families with more than two free indices")
        m = start
        while _least_positive(s, prefix + (m,), m) is None:
            m += 1
        families.append(TwoParameterFamily(0, prefix, m))
        return
    v = start
    while _limit(s, prefix) - Fraction(remaining, v) < HALF:
        _walk(s, prefix + (v,), families, exceptional)
        v += 1


def enumerate_large_signatures(branch_counts: tuple[int, ...] = BRANCH_COUNTS) -> LargeSignatures:
    """Families and exceptional signatures with genus-0 quotient and 0 < mu < 1/2."""
    families: list[Family] = []
    exceptional: list[Signature] = []
    for s in branch_counts:
        _walk(s, (), families, exceptional)
    families.sort(key=_family_key)
    exceptional.sort(key=lambda sig: (-sig.s, sig.indices))
    return LargeSignatures(families, exceptional)


def exceptional_blocks(exceptional: list[Signature]) -> OrderedDict[tuple[int, ...], list[Signature]]:
    """Exceptional signatures grouped by all indices but the largest."""
    blocks: OrderedDict[tuple[int, ...], list[Signature]] = OrderedDict()
    for sig in exceptional:
        blocks.setdefault(sig.indices[:-1], []).append(sig)
    return blocks


def expand_family(fam: Family, max_param: int) -> list[Signature]:
    """Concrete members with every parameter at most ``max_param``."""
    return sorted(set(fam.signatures(max_param)))


def is_large_signature(sig: Signature) -> bool:
    return sig.quotient_genus == 0 and 0 < reduced_euler(sig) < HALF


def contains(found: LargeSignatures, sig: Signature) -> bool:
    return sig in found.exceptional or any(f.contains(sig) for f in found.families)


# --- exclusion certificate --------------------------------------------------


@dataclass(frozen=True)
class ExclusionCase:
    description: str
    quotient_genus: int
    min_branch_count: int
    max_branch_count: int | None
    extremal_mu: Fraction
    attained: bool
    excluded: bool


@dataclass
class ExclusionReport:
    cases: list[ExclusionCase] = field(default_factory=list)
    scan_bound: int = 0
    scan_checked: int = 0
    scan_violations: list[Signature] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.excluded for c in self.cases) and not self.scan_violations


def verify_exclusion_bounds(scan_index_bound: int = 8, scan_branch_bound: int = 6) -> ExclusionReport:
    """Certify that only genus-0 quotients with 3 or 4 branch points can be large.

    Each term 1 - 1/v lies in [1/2, 1), so mu is bounded below by its value at
    all indices 2 with the fewest branch points, and bounded above by
    2h - 2 + s (never attained).  Those extremal values are computed exactly;
    an exhaustive scan of small index tuples confirms the monotonicity used.
    """
    report = ExclusionReport()

    def at_twos(h: int, s: int) -> Fraction:
        return reduced_euler(Signature(h, (2,) * s))

    mu = at_twos(1, 1)
    report.cases.append(ExclusionCase("quotient genus >= 1 with s >= 1", 1, 1, None, mu, True, mu >= HALF))
    mu = at_twos(2, 0)
    report.cases.append(ExclusionCase("quotient genus >= 2", 2, 0, None, mu, True, mu >= HALF))
    mu = at_twos(0, 5)
    report.cases.append(ExclusionCase("quotient genus 0 with s >= 5", 0, 5, None, mu, True, mu >= HALF))
    sup = Fraction(2 * 0 - 2 + 2)
    report.cases.append(ExclusionCase("quotient genus 0 with s <= 2", 0, 0, 2, sup, False, sup <= 0))
    mu = at_twos(1, 0)
    report.cases.append(ExclusionCase("quotient genus 1 unbranched", 1, 0, 0, mu, True, mu <= 0))

    report.scan_bound = scan_index_bound
    for h in range(3):
        for s in range(scan_branch_bound + 1):
            for idx in product(range(2, scan_index_bound + 1), repeat=s):
                if list(idx) != sorted(idx):
                    continue
                sig = Signature(h, idx)
                report.scan_checked += 1
                if not (h == 0 and s in BRANCH_COUNTS) and 0 < reduced_euler(sig) < HALF:
                    report.scan_violations.append(sig)
    return report


# --- brute-force completeness oracle -----------------------------------------


def brute_force_large_signatures(max_index: int = COMPLETENESS_BOUND) -> set[tuple[int, ...]]:
    """Every sorted 3- or 4-tuple of indices in [2, max_index] with 0 < mu < 1/2.

    Works in integers: with P the product of the indices, mu * P is
    (s-2) * P - sum(P / v), compared against 0 and P / 2.
    """
    vals = np.arange(2, max_index + 1, dtype=np.int64)
    found: set[tuple[int, ...]] = set()
    a, b, c = np.meshgrid(vals, vals, vals, indexing="ij")
    mask = (a <= b) & (b <= c)
    a, b, c = a[mask], b[mask], c[mask]
    p = a * b * c
    num = p - (b * c + a * c + a * b)
    keep = (num > 0) & (2 * num < p)
    found.update(zip(a[keep].tolist(), b[keep].tolist(), c[keep].tolist()))
    for v1 in range(2, max_index + 1):
        for v2 in range(v1, max_index + 1):
            c3, c4 = np.meshgrid(vals[v2 - 2:], vals[v2 - 2:], indexing="ij")
            mask = c3 <= c4
            c3, c4 = c3[mask], c4[mask]
            p = v1 * v2 * c3 * c4
            num = 2 * p - (v2 * c3 * c4 + v1 * c3 * c4 + v1 * v2 * c4 + v1 * v2 * c3)
            keep = (num > 0) & (2 * num < p)
            if keep.any():
                found.update((v1, v2, x, y) for x, y in zip(c3[keep].tolist(), c4[keep].tolist()))
    return found


@dataclass
class CompletenessReport:
    max_index: int
    brute_count: int
    enumerated_count: int
    missing: list[tuple[int, ...]]
    extra: list[tuple[int, ...]]
    overlaps: list[tuple[int, ...]]

    @property
    def ok(self) -> bool:
        return not (self.missing or self.extra or self.overlaps)


def check_completeness(max_index: int = COMPLETENESS_BOUND, found: LargeSignatures | None = None) -> CompletenessReport:
    """Compare the family/exceptional output with the brute-force set up to ``max_index``."""
    found = found or enumerate_large_signatures()
    seen: dict[tuple[int, ...], int] = {}
    for fam in found.families:
        for sig in expand_family(fam, max_index):
            seen[sig.indices] = seen.get(sig.indices, 0) + 1
    for sig in found.exceptional:
        if max(sig.indices) <= max_index:
            seen[sig.indices] = seen.get(sig.indices, 0) + 1
    brute = brute_force_large_signatures(max_index)
    return CompletenessReport(
        max_index=max_index,
        brute_count=len(brute),
        enumerated_count=len(seen),
        missing=sorted(brute - seen.keys()),
        extra=sorted(seen.keys() - brute),
        overlaps=sorted(k for k, c in seen.items() if c > 1),
    )
