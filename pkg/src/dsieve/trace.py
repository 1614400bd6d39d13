"""Per-train event lists and sampled waveforms for figure reproduction.

These functions emit the data behind the crossing diagrams: exact
integer event times per prime train, and a rendered sin^2 waveform
whose zeros sit on the crossings.  Output is data only (CSV and JSON);
image rendering lives in :mod:`dsieve.figures`.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

from .engine import SieveMode


def _require_prime(p: int) -> int:
    p = int(p)
    if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
        raise ValueError(f"{p} is not prime")
    return p


def _trace_mode(mode: SieveMode | str) -> SieveMode:
    mode = SieveMode(mode)
    if mode is SieveMode.EULER:
        # crossings in euler mode depend on every smaller prime, not on
        # a per-train schedule, so there is no single-train trace
        raise ValueError("euler mode has no per-train trace")
    return mode


def crossing_times(p: int, mode: SieveMode | str, t_max: int) -> list[int]:
    """Integer times the train of p crosses, in [1, t_max].

    Full and odd-full-period trains cross k*p for k >= 2; odd-mode
    trains cross odd multiples (2k+1)*p only.
    """
    p = _require_prime(p)
    mode = _trace_mode(mode)
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    if mode is SieveMode.ODD_ONLY:
        if p == 2:
            raise ValueError("odd mode has no train for p=2")
        return list(range(3 * p, t_max + 1, 2 * p))
    if mode is SieveMode.ODD_FULL_PERIOD and p == 2:
        raise ValueError("odd-full-period mode has no train for p=2")
    return list(range(2 * p, t_max + 1, p))


def extremum_times(p: int, t_max: int) -> list[int]:
    """Odd-mode waveform maxima: even multiples of the odd prime p."""
    p = _require_prime(p)
    if p == 2:
        raise ValueError("extrema are defined for odd primes only")
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    return list(range(2 * p, t_max + 1, 2 * p))


@dataclass(frozen=True)
class WaveSample:
    t: float
    value: float


def render_wave(p: int, mode: SieveMode | str, t_max: int, samples_per_unit: int) -> list[WaveSample]:
    """Sampled sin^2 waveform for one train on [p, t_max].

    Full / odd-full-period: sin^2(pi*t/p), zero on every multiple of p.
    Odd mode: sin^2(pi*(t-p)/(2p)), zero on odd multiples, one on even
    multiples.  Samples landing on those integer times are snapped to
    exactly 0.0 / 1.0 so event alignment survives float sampling.
    """
    p = _require_prime(p)
    mode = _trace_mode(mode)
    # half-period convention only in odd mode; odd-full-period trains
    # run at full period p and share the full-mode waveform
    odd = mode is SieveMode.ODD_ONLY
    if mode is not SieveMode.FULL and p == 2:
        raise ValueError(f"{mode.value} mode has no train for p=2")
    if t_max < p:
        raise ValueError("t_max must be >= p")
    if samples_per_unit < 2:
        raise ValueError("samples_per_unit must be >= 2")
    spu = int(samples_per_unit)
    out = []
    for i in range((t_max - p) * spu + 1):
        num = p * spu + i  # t = num / spu, exact
        t = num / spu
        if num % spu == 0:
            ti = num // spu
            if ti % p == 0:
                k = ti // p
                if odd:
                    value = 0.0 if k & 1 else 1.0
                else:
                    value = 0.0
                out.append(WaveSample(t, value))
                continue
        if odd:
            value = math.sin(math.pi * (t - p) / (2 * p)) ** 2
        else:
            value = math.sin(math.pi * t / p) ** 2
        out.append(WaveSample(t, value))
    return out


@dataclass(frozen=True)
class TraceRecord:
    """Event times for one prime's train under one mode."""

    prime: int
    mode: SieveMode
    crossing_times: tuple[int, ...]
    extremum_times: tuple[int, ...] = ()


@dataclass(frozen=True)
class FigureDataset:
    """Traces for a prime set plus the merged per-time crossing marks."""

    mode: SieveMode
    t_max: int
    records: tuple[TraceRecord, ...]
    marks: dict[int, list[int]]

    def events(self) -> list[tuple[int, int, str]]:
        """(t, prime, event) rows, event 'cross' or 'max', time-ordered."""
        rows = []
        for rec in self.records:
            rows.extend((t, rec.prime, "cross") for t in rec.crossing_times)
            rows.extend((t, rec.prime, "max") for t in rec.extremum_times)
        rows.sort()
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t", "prime", "event"])
        writer.writerows(self.events())
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "mode": self.mode.value,
            "t_max": self.t_max,
            "records": [
                {
                    "prime": rec.prime,
                    "crossing_times": list(rec.crossing_times),
                    "extremum_times": list(rec.extremum_times),
                }
                for rec in self.records
            ],
            "marks": [{"t": t, "primes": ps} for t, ps in sorted(self.marks.items())],
        }
        return json.dumps(doc, separators=(",", ":"))


def figure_dataset(primes, mode: SieveMode | str, t_max: int) -> FigureDataset:
    """Traces for each prime plus which primes cross each integer time."""
    mode = _trace_mode(mode)
    records = []
    marks: dict[int, list[int]] = {}
    for p in sorted(set(primes)):
        crossings = crossing_times(p, mode, t_max)
        extrema = extremum_times(p, t_max) if mode is SieveMode.ODD_ONLY else []
        records.append(TraceRecord(p, mode, tuple(crossings), tuple(extrema)))
        for t in crossings:
            marks.setdefault(t, []).append(p)
    return FigureDataset(mode, t_max, tuple(records), marks)


def wave_csv(primes, mode: SieveMode | str, t_max: int, samples_per_unit: int) -> str:
    """Columns t, prime, value for every sampled waveform point."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "prime", "value"])
    for p in sorted(set(primes)):
        for sample in render_wave(p, mode, t_max, samples_per_unit):
            writer.writerow([f"{sample.t:g}", p, repr(sample.value)])
    return buf.getvalue()
