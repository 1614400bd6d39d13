"""Incremental dynamical sieve: primes as crossing trains on a time line.

Time advances one integer step at a time.  A time nobody crosses is
decoded as prime and (mode permitting) spawns a train that thereafter
crosses its scheduled multiples; a crossed time is composite, encoded by
the primes whose trains hit it.  Trains live in a priority queue keyed
by their next crossing, so a step touches only the trains due right
then, and the engine is unbounded: ``run_to`` is just a bounded view of
the same ever-growing time line.

Modes:

* ``full``: every prime spawns; the train of p crosses k*p for k >= 2.
* ``odd``: odd primes only; the train of p crosses odd multiples
  (2k+1)*p, so even times are never touched.
* ``odd-full-period``: odd primes only, but the train of p crosses every
  k*p for k >= 2.  Powers of two are the only composites left untouched.
* ``euler``: every composite is crossed exactly once, by its smallest
  prime factor.

The engine records verdicts as it goes; ledgers returned by ``run_to``
share that append-only history, so they are cheap and safe to hold.
A ledger is value-comparable and exports JSON-lines or CSV.
"""

from __future__ import annotations

import csv
import json
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from heapq import heappush, heapreplace
from typing import Iterator


class SieveMode(Enum):
    FULL = "full"
    ODD_ONLY = "odd"
    ODD_FULL_PERIOD = "odd-full-period"
    EULER = "euler"


class Verdict(Enum):
    UNIT = "unit"
    DECODED_PRIME = "decoded_prime"
    CROSSED = "crossed"
    UNTOUCHED = "untouched"


_UNIT, _PRIME, _CROSSED, _UNTOUCHED = 0, 1, 2, 3
_BY_CODE = (Verdict.UNIT, Verdict.DECODED_PRIME, Verdict.CROSSED, Verdict.UNTOUCHED)


@dataclass(frozen=True)
class TimeIndex:
    """A point on the discrete time line, displayed as n^s."""

    n: int
    s: float = 1.0

    @property
    def label(self) -> str:
        return str(self.n) if self.s == 1.0 else f"{self.n}^{self.s:g}"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    crossers: tuple[int, ...] = ()


@dataclass(frozen=True)
class PrimeTrain:
    """Snapshot of one live train.

    ``period`` is the train's nominal spacing (p, or 2p in odd mode); in
    euler mode crossings are irregular and ``next_cross`` alone is
    authoritative.
    """

    prime: int
    period: int
    next_cross: int


class Engine:
    """Stateful incremental sieve for one mode.

    ``s`` is a display exponent attached to emitted time indices; it
    never influences scheduling or verdicts.  ``start_at_square`` lets
    trains begin at p*p instead of their first multiple; crossings that
    scheduling skips are reconstructed from the integer residue, so the
    resulting ledgers are identical either way.
    """

    def __init__(self, mode: SieveMode | str, s: float = 1.0, start_at_square: bool = False):
        self.mode = SieveMode(mode)
        if not s > 0:
            raise ValueError("display exponent s must be positive")
        self.s = float(s)
        self.start_at_square = bool(start_at_square)
        self._time = 0
        self._heap: list[tuple[int, int, int]] = []
        self._verdicts = bytearray(1)  # index 0 is padding
        self._crossers: dict[int, tuple[int, ...]] = {}
        self._primes: list[int] = []
        self._total = 0

    @property
    def current_time(self) -> int:
        return self._time

    @property
    def train_count(self) -> int:
        return len(self._heap)

    @property
    def trains(self) -> list[PrimeTrain]:
        if self.mode is SieveMode.EULER:
            snap = [PrimeTrain(p, p, nc) for nc, p, _ in self._heap]
        else:
            snap = [PrimeTrain(p, step, nc) for nc, p, step in self._heap]
        return sorted(snap, key=lambda tr: tr.prime)

    def step(self) -> tuple[TimeIndex, Classification]:
        """Advance time by one and report what happened there."""
        t = self._time + 1
        self._advance(t)
        code = self._verdicts[t]
        return TimeIndex(t, self.s), Classification(_BY_CODE[code], self._crossers.get(t, ()))

    def run_to(self, limit: int) -> SieveLedger:
        """Advance (if needed) through ``limit`` and return that view."""
        if limit < 1:
            raise ValueError("limit must be >= 1")
        self._advance(limit)
        if self._time == limit:
            total = self._total
        else:
            total = sum(len(v) for n, v in self._crossers.items() if n <= limit)
        return SieveLedger(self.mode, limit, self._verdicts, self._crossers, self._primes, total)

    # -- internals ----------------------------------------------------

    def _advance(self, limit: int) -> None:
        if limit <= self._time:
            return
        if self.mode is SieveMode.EULER:
            self._advance_euler(limit)
        else:
            self._advance_trains(limit)
        self._time = limit

    def _advance_trains(self, limit: int) -> None:
        heap = self._heap
        verdicts = self._verdicts
        crossmap = self._crossers
        primes = self._primes
        total = self._total
        sq = self.start_at_square
        full = self.mode is SieveMode.FULL
        odd_only = self.mode is SieveMode.ODD_ONLY
        append = verdicts.append
        for t in range(self._time + 1, limit + 1):
            if heap and heap[0][0] == t:
                found = []
                while heap[0][0] == t:
                    nc, p, step = heap[0]
                    heapreplace(heap, (nc + step, p, step))
                    found.append(p)
                if sq:
                    # Trains sleep until p*p, so the one prime divisor
                    # above sqrt(t), if any, never pops; take it from the
                    # residue after dividing out everything that did.
                    r = t
                    if not full:
                        while not r & 1:
                            r >>= 1
                    for p in found:
                        while not r % p:
                            r //= p
                    if r > 1:
                        found.append(r)
                append(_CROSSED)
                crossmap[t] = tuple(found)
                total += len(found)
            elif full:
                if t >= 2:
                    append(_PRIME)
                    primes.append(t)
                    heappush(heap, (t * t if sq else 2 * t, t, t))
                else:
                    append(_UNIT)
            elif t & 1:
                if t >= 3:
                    append(_PRIME)
                    primes.append(t)
                    if odd_only:
                        heappush(heap, (t * t if sq else 3 * t, t, 2 * t))
                    else:
                        heappush(heap, (t * t if sq else 2 * t, t, t))
                else:
                    append(_UNIT)
            elif sq and not odd_only and t >= 4:
                # odd-full-period with sleeping trains: an even time with
                # no pop either is a power of two (truly untouched) or
                # hides a single odd prime divisor above sqrt(t).
                o = t
                while not o & 1:
                    o >>= 1
                if o > 1:
                    append(_CROSSED)
                    crossmap[t] = (o,)
                    total += 1
                else:
                    append(_UNTOUCHED)
            else:
                append(_UNTOUCHED)
        self._total = total

    def _advance_euler(self, limit: int) -> None:
        heap = self._heap
        verdicts = self._verdicts
        crossmap = self._crossers
        primes = self._primes
        total = self._total
        append = verdicts.append
        for t in range(self._time + 1, limit + 1):
            if heap and heap[0][0] == t:
                # exactly one train owns each composite: t = p*m with
                # every prime factor of the cofactor m at least p
                nc, p, m = heap[0]
                if p == 2:
                    m += 1
                else:
                    m += 2
                    while _cofactor_blocked(m, p, primes):
                        m += 2
                heapreplace(heap, (p * m, p, m))
                append(_CROSSED)
                crossmap[t] = (p,)
                total += 1
            elif t >= 2:
                append(_PRIME)
                primes.append(t)
                heappush(heap, (t * t, t, t))
            else:
                append(_UNIT)
        self._total = total


def _cofactor_blocked(m: int, p: int, primes: list[int]) -> bool:
    """True if some prime below p divides m (m odd, primes ascending)."""
    i = 1  # primes[0] == 2 never divides an odd cofactor
    while True:
        q = primes[i]
        if q >= p or q * q > m:
            return False
        if not m % q:
            return True
        i += 1


def new_engine(mode: SieveMode | str, s: float = 1.0, start_at_square: bool = False) -> Engine:
    return Engine(mode, s=s, start_at_square=start_at_square)


class SieveLedger:
    """Frozen classification of every time 1..limit under one mode."""

    __slots__ = ("mode", "limit", "_verdicts", "_crossers", "_primes", "_total")

    def __init__(self, mode, limit, verdicts, crossers, primes, total):
        self.mode = mode
        self.limit = limit
        self._verdicts = verdicts
        self._crossers = crossers
        self._primes = primes
        self._total = total

    @property
    def total_crossings(self) -> int:
        return self._total

    def _check(self, n: int) -> None:
        if not 1 <= n <= self.limit:
            raise ValueError(f"n={n} outside ledger range 1..{self.limit}")

    def verdict(self, n: int) -> Verdict:
        self._check(n)
        return _BY_CODE[self._verdicts[n]]

    def crossers(self, n: int) -> list[int]:
        """Primes whose trains crossed n, ascending; empty if uncrossed."""
        self._check(n)
        return list(self._crossers.get(n, ()))

    def classification(self, n: int) -> Classification:
        self._check(n)
        return Classification(_BY_CODE[self._verdicts[n]], self._crossers.get(n, ()))

    def decoded_primes(self) -> list[int]:
        return self._primes[: bisect_right(self._primes, self.limit)]

    def crossed(self) -> Iterator[tuple[int, tuple[int, ...]]]:
        verdicts = self._verdicts
        crossmap = self._crossers
        for n in range(1, self.limit + 1):
            if verdicts[n] == _CROSSED:
                yield n, crossmap[n]

    def untouched(self) -> list[int]:
        verdicts = self._verdicts
        return [n for n in range(1, self.limit + 1) if verdicts[n] == _UNTOUCHED]

    def entries(self) -> Iterator[tuple[int, Classification]]:
        for n in range(1, self.limit + 1):
            yield n, Classification(_BY_CODE[self._verdicts[n]], self._crossers.get(n, ()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SieveLedger):
            return NotImplemented
        if (self.mode, self.limit, self._total) != (other.mode, other.limit, other._total):
            return False
        if self._verdicts[1 : self.limit + 1] != other._verdicts[1 : other.limit + 1]:
            return False
        mine, theirs = self._crossers, other._crossers
        return all(mine[n] == theirs.get(n) for n, _ in self.crossed())

    def __repr__(self) -> str:
        return (
            f"SieveLedger(mode={self.mode.value!r}, limit={self.limit}, "
            f"total_crossings={self._total})"
        )

    def write_jsonl(self, fp, crossed_only: bool = False) -> None:
        """One JSON object per time: {"n": ..., "verdict": ..., "crossers": [...]}."""
        verdicts = self._verdicts
        crossmap = self._crossers
        for n in range(1, self.limit + 1):
            code = verdicts[n]
            if crossed_only and code != _CROSSED:
                continue
            row = {"n": n, "verdict": _BY_CODE[code].value, "crossers": list(crossmap.get(n, ()))}
            fp.write(json.dumps(row, separators=(",", ":")))
            fp.write("\n")

    def write_csv(self, fp, crossed_only: bool = False) -> None:
        """Columns n, verdict, crossers; crossers joined with '|'."""
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(["n", "verdict", "crossers"])
        verdicts = self._verdicts
        crossmap = self._crossers
        for n in range(1, self.limit + 1):
            code = verdicts[n]
            if crossed_only and code != _CROSSED:
                continue
            crossers = "|".join(map(str, crossmap.get(n, ())))
            writer.writerow([n, _BY_CODE[code].value, crossers])


def run_to(mode: SieveMode | str, limit: int, s: float = 1.0, start_at_square: bool = False) -> SieveLedger:
    """One-shot ledger for a fresh engine of the given mode."""
    return Engine(mode, s=s, start_at_square=start_at_square).run_to(limit)


def euler_run_to(limit: int) -> SieveLedger:
    """Batch euler-mode ledger via the linear sieve.

    Equivalent to running a euler-mode engine to ``limit`` (the engines
    agree entry for entry) but in one pass: each composite i*p is marked
    through its smallest prime factor exactly once.
    """
    if limit < 2:
        raise ValueError("limit must be >= 2")
    verdicts = bytearray(limit + 1)
    crossers: dict[int, tuple[int, ...]] = {}
    primes: list[int] = []
    spf = [0] * (limit + 1)
    verdicts[1] = _UNIT
    for i in range(2, limit + 1):
        si = spf[i]
        if si == 0:
            si = spf[i] = i
            primes.append(i)
            verdicts[i] = _PRIME
        else:
            verdicts[i] = _CROSSED
            crossers[i] = (si,)
        for p in primes:
            if p > si or i * p > limit:
                break
            spf[i * p] = p
    return SieveLedger(SieveMode.EULER, limit, verdicts, crossers, primes, len(crossers))
