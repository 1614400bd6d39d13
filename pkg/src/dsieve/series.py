"""Numeric checks tying partial sieving to the zeta Euler product.

Striking the multiples of a prime set P from 1..N and summing n^-s over
the survivors should approach prod_{p in P}(1 - p^-s) * zeta(s); the
functions here compute both sides with exact (error-free) summation and
an explicit truncation bound, so the comparison is a theorem check, not
a tolerance guess.  Everything requires s > 1: below that the series
diverges and no finite truncation means anything.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import fsum, prod
from typing import Iterable, NamedTuple

from . import oracle
from .engine import Engine, SieveMode


class DivergentSeriesError(ValueError):
    """Raised when an exponent s <= 1 is asked of a divergent-tail sum."""


def _require_convergent(s: float) -> float:
    s = float(s)
    if not s > 1.0:
        raise DivergentSeriesError(f"s={s}: the series only converges for s > 1")
    return s


class ZetaTruncation(NamedTuple):
    value: float
    tail_bound: float


def truncated_zeta(s: float, n_max: int) -> ZetaTruncation:
    """Sum of n^-s for n = 1..n_max plus an integral bound on the tail.

    The tail beyond n_max is below n_max^(1-s)/(s-1).  Terms are summed
    with math.fsum, so the value is exact to one rounding.
    """
    s = _require_convergent(s)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    value = fsum(n ** -s for n in range(1, n_max + 1))
    return ZetaTruncation(value, n_max ** (1.0 - s) / (s - 1.0))


def validated_primes(primes: Iterable[int]) -> tuple[int, ...]:
    """Sorted distinct primes, each checked against the reference table."""
    out = tuple(sorted(set(int(p) for p in primes)))
    if out:
        table = oracle.build(max(out[-1], 2))
        for p in out:
            if p < 2 or not table.is_prime(p):
                raise ValueError(f"{p} is not prime")
    return out


@dataclass(frozen=True)
class SeriesParams:
    """Validated inputs for one survivor-series comparison."""

    s: float
    limit: int
    primes: tuple[int, ...]

    def __post_init__(self):
        _require_convergent(self.s)
        if self.limit < 1:
            raise ValueError("limit must be >= 1")
        object.__setattr__(self, "primes", validated_primes(self.primes))


@dataclass(frozen=True)
class SeriesComparison:
    survivor_sum: float
    partial_product: float
    zeta_estimate: float
    abs_error: float
    tail_bound: float

    @property
    def passed(self) -> bool:
        return self.abs_error <= self.tail_bound


def survivor_indices(n_max: int, primes: Iterable[int]) -> list[int]:
    """The n in 1..n_max divisible by no prime in the set (1 survives)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    primes = validated_primes(primes)
    alive = bytearray(b"\x01") * (n_max + 1)
    for p in primes:
        if p <= n_max:
            alive[p::p] = b"\x00" * len(range(p, n_max + 1, p))
    return [n for n in range(1, n_max + 1) if alive[n]]


def survivor_sum(s: float, n_max: int, primes: Iterable[int]) -> float:
    """Exactly-summed n^-s over the survivors of partial sieving by P."""
    s = _require_convergent(s)
    return fsum(n ** -s for n in survivor_indices(n_max, primes))


def train_crossing_sum(s: float, n_max: int, p: int) -> float:
    """Sum of (k*p)^-s over the crossings k*p <= n_max of one train.

    Factors algebraically as p^-s times the zeta partial sum out to
    n_max // p; the identity is exercised in the tests.
    """
    s = _require_convergent(s)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    (p,) = validated_primes([p])
    return fsum((k * p) ** -s for k in range(1, n_max // p + 1))


def compare_sieved_series(s: float, n_max: int, primes: Iterable[int]) -> SeriesComparison:
    """Survivor sum vs. partial Euler product times truncated zeta.

    The reported ``tail_bound`` combines both truncations:
    (1 + prod(1 - p^-s)) * n_max^(1-s)/(s-1).  A comparison passes when
    the absolute error sits within that bound.
    """
    params = SeriesParams(s, n_max, tuple(primes))
    s = params.s
    partial_product = prod(1.0 - p ** -s for p in params.primes)
    zeta_value, zeta_tail = truncated_zeta(s, params.limit)
    surv = survivor_sum(s, params.limit, params.primes)
    abs_error = abs(surv - partial_product * zeta_value)
    tail_bound = (1.0 + partial_product) * zeta_tail
    return SeriesComparison(surv, partial_product, zeta_value, abs_error, tail_bound)


def crossing_set_identity(p: int, n_max: int) -> bool:
    """Does the full-mode train of p cross exactly {k*p : 2 <= k <= n_max/p}?

    Runs a real engine out to n_max and compares the times attributing p
    against directly generated multiples.
    """
    (p,) = validated_primes([p])
    if n_max < p:
        raise ValueError("n_max must be >= p")
    ledger = Engine(SieveMode.FULL).run_to(n_max)
    attributed = {n for n, crossers in ledger.crossed() if p in crossers}
    return attributed == set(range(2 * p, n_max + 1, p))
