"""Decomposing numbers into sums of odd primes, with range verification.

Every odd n > 7 should split into three odd primes (repeats allowed,
2 never used).  The canonical witness is the lexicographically smallest
non-decreasing triple; it is found by walking p1 up the odd primes and
handing the even remainder to the two-prime search, which itself walks
its smaller element up.  A miss inside a verified range is a finding to
report, never an exception to hide, so range verification returns the
failures as data.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import oracle


class BelowThresholdError(ValueError):
    """Raised for odd n <= 7, which sit below the three-prime threshold."""


class DecompositionNotFound(Exception):
    """Exhaustive search found no decomposition; in-range this is news."""

    def __init__(self, n: int, kind: str):
        super().__init__(f"no {kind} decomposition into odd primes found for {n}")
        self.n = n


@dataclass(frozen=True)
class GoldbachWitness:
    """A verified n = p1 + p2 + p3 over odd primes, p1 <= p2 <= p3."""

    n: int
    triple: tuple[int, int, int]


@dataclass
class RangeReport:
    limit: int
    verified_count: int
    failures: list[int] = field(default_factory=list)
    max_p1: int = 0


def _table_for(n: int, table: oracle.PrimeTable | None) -> oracle.PrimeTable:
    if table is not None and table.limit >= n:
        return table
    return oracle.build(max(n, 2))


def _bit(bitmap: bytes, n: int) -> int:
    # n odd, >= 3
    k = (n - 3) >> 1
    return bitmap[k >> 3] >> (k & 7) & 1


def goldbach_pair(n: int, table: oracle.PrimeTable | None = None) -> tuple[int, int]:
    """Smallest-first pair of odd primes summing to the even n >= 6."""
    if n % 2 or n < 6:
        raise ValueError(f"n must be even and >= 6, got {n}")
    table = _table_for(n, table)
    bitmap = table.odd_bitmap
    q = 3
    while 2 * q <= n:
        if _bit(bitmap, q) and _bit(bitmap, n - q):
            return q, n - q
        q += 2
    raise DecompositionNotFound(n, "two-prime")


def goldbach_triple(n: int, table: oracle.PrimeTable | None = None) -> GoldbachWitness:
    """Canonical three-odd-prime witness for odd n > 7.

    Walking p1 up the odd primes and taking the smallest-first pair for
    n - p1 yields the lexicographically smallest non-decreasing triple:
    any pair element below p1 would itself have worked as an earlier p1.
    """
    if n % 2 == 0:
        raise ValueError(f"n must be odd, got {n}")
    if n <= 7:
        raise BelowThresholdError(f"n must exceed 7, got {n}")
    table = _table_for(n, table)
    bitmap = table.odd_bitmap
    for p1 in range(3, n - 5, 2):
        if not _bit(bitmap, p1):
            continue
        try:
            q1, q2 = goldbach_pair(n - p1, table)
        except DecompositionNotFound:
            continue
        return GoldbachWitness(n, (p1, q1, q2))
    raise DecompositionNotFound(n, "three-prime")


def verify_range(limit: int, table: oracle.PrimeTable | None = None) -> RangeReport:
    """Check every odd n in [9, limit] for a three-odd-prime witness.

    Misses land in ``failures`` (none are expected); ``max_p1`` is the
    largest leading prime any canonical witness needed.
    """
    if limit < 9:
        raise ValueError("limit must be >= 9")
    table = _table_for(limit, table)
    bitmap = table.odd_bitmap
    report = RangeReport(limit, 0)
    max_p1 = 0
    verified = 0
    for n in range(9, limit + 1, 2):
        # fast path p1 = 3: scan the pair's smaller element inline
        m = n - 3
        half = m >> 1
        q = 3
        hit = False
        while q <= half:
            k = (q - 3) >> 1
            if bitmap[k >> 3] >> (k & 7) & 1:
                r = m - q
                k = (r - 3) >> 1
                if bitmap[k >> 3] >> (k & 7) & 1:
                    hit = True
                    break
            q += 2
        if hit:
            verified += 1
            if max_p1 < 3:
                max_p1 = 3
            continue
        try:
            witness = goldbach_triple(n, table)
        except DecompositionNotFound:
            report.failures.append(n)
            continue
        verified += 1
        if witness.triple[0] > max_p1:
            max_p1 = witness.triple[0]
    report.verified_count = verified
    report.max_p1 = max_p1
    return report


def witnesses_use_decoded_primes(limit: int) -> bool:
    """Every prime in any canonical witness up to ``limit`` must be one
    the odd-mode engine decodes; cross-checks the two components."""
    from .engine import Engine, SieveMode

    if limit < 9:
        raise ValueError("limit must be >= 9")
    decoded = set(Engine(SieveMode.ODD_ONLY).run_to(limit).decoded_primes())
    table = oracle.build(limit)
    seen: set[int] = set()
    for n in range(9, limit + 1, 2):
        seen.update(goldbach_triple(n, table).triple)
    return seen <= decoded
