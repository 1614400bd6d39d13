from __future__ import annotations

import math
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dsieve.series import (
    DivergentSeriesError,
    SeriesParams,
    compare_sieved_series,
    crossing_set_identity,
    survivor_indices,
    survivor_sum,
    train_crossing_sum,
    truncated_zeta,
)


def test_truncated_zeta_single_term():
    value, tail = truncated_zeta(2, 1)
    assert value == 1.0
    assert tail == 1.0


def test_truncated_zeta_examples():
    value, tail = truncated_zeta(2, 5)
    direct = 1 + 1 / 4 + 1 / 9 + 1 / 16 + 1 / 25
    assert value == pytest.approx(direct, rel=1e-15)
    assert tail == pytest.approx(5 ** -1.0, rel=1e-15)


def test_truncated_zeta_bound_really_bounds():
    # the tail bound at N must cover the mass revealed by 10N more terms
    for s in (1.5, 2.0, 3.0):
        for n in (10, 100, 1_000):
            value, tail = truncated_zeta(s, n)
            refined = truncated_zeta(s, 10 * n).value
            assert refined - value <= tail
            assert refined > value


def test_divergent_exponents_are_rejected():
    for s in (1.0, 0.5, 0.0, -2.0):
        with pytest.raises(DivergentSeriesError):
            truncated_zeta(s, 10)
        with pytest.raises(DivergentSeriesError):
            survivor_sum(s, 10, [2])
        with pytest.raises(DivergentSeriesError):
            train_crossing_sum(s, 10, 2)
        with pytest.raises(DivergentSeriesError):
            compare_sieved_series(s, 10, [2])


def test_divergent_error_is_a_value_error():
    assert issubclass(DivergentSeriesError, ValueError)


def test_survivor_indices_examples():
    assert survivor_indices(15, [2]) == [1, 3, 5, 7, 9, 11, 13, 15]
    assert survivor_indices(13, [2, 3]) == [1, 5, 7, 11, 13]
    assert survivor_indices(10, []) == list(range(1, 11))


def test_survivor_indices_always_keeps_one():
    assert survivor_indices(1, [2, 3, 5])[0] == 1


def test_survivor_sum_five_odd_terms():
    got = survivor_sum(2, 10, [2])
    assert got == pytest.approx(1 + 1 / 9 + 1 / 25 + 1 / 49 + 1 / 81, rel=1e-15)


def test_series_params_validation():
    params = SeriesParams(2.0, 100, (3, 2, 3))
    assert params.primes == (2, 3)
    with pytest.raises(ValueError):
        SeriesParams(2.0, 100, (4,))
    with pytest.raises(ValueError):
        SeriesParams(2.0, 0, (2,))
    with pytest.raises(DivergentSeriesError):
        SeriesParams(1.0, 100, (2,))


def test_train_crossing_sum_empty_when_prime_exceeds_limit():
    assert train_crossing_sum(2, 1, 2) == 0.0


def test_train_crossing_sum_direct_small_case():
    got = train_crossing_sum(2, 9, 3)
    assert got == pytest.approx(1 / 9 + 1 / 36 + 1 / 81, rel=1e-15)


def test_train_crossing_sum_rejects_composites():
    with pytest.raises(ValueError):
        train_crossing_sum(2, 100, 9)


def test_train_factorization_identity_at_ulp_scale():
    # sum over one train == p^-s * zeta partial out to n_max//p
    for p in (2, 3, 5, 7, 11, 13):
        for n_max in (p, 3 * p + 1, 97, 1_000):
            for s in (1.5, 2.0, 3.0):
                lhs = train_crossing_sum(s, n_max, p)
                rhs = p ** -s * truncated_zeta(s, n_max // p).value
                assert abs(lhs - rhs) <= 4 * sys.float_info.epsilon * max(abs(lhs), abs(rhs))


def test_partition_identity_under_partial_sieving():
    # survivors and the per-prime crossing sums recompose the zeta sum:
    # terms double-counted by overlapping trains come back via inclusion
    # on squarefree products, so check the disjoint single-prime case
    s, n_max = 2.0, 5_000
    zeta_value = truncated_zeta(s, n_max).value
    surv = survivor_sum(s, n_max, [2])
    train = train_crossing_sum(s, n_max, 2)
    assert surv + train == pytest.approx(zeta_value, rel=1e-14)


def test_survivor_membership_is_exact_partition():
    # every n <= N is a survivor iff no sieving prime divides it
    n_max = 10_000
    for primes in ([], [2], [3, 7], [2, 3, 5, 7]):
        alive = set(survivor_indices(n_max, primes))
        for n in range(1, n_max + 1):
            divisible = any(n % p == 0 for p in primes)
            assert (n in alive) == (not divisible)


def test_survivor_prefix_closure():
    full = survivor_indices(2_000, [2, 5])
    for n_max in (1, 17, 500, 1_999):
        assert survivor_indices(n_max, [2, 5]) == [n for n in full if n <= n_max]


def test_monotone_sieving_shrinks_the_sum():
    s, n_max = 2.0, 2_000
    sums = [
        survivor_sum(s, n_max, p)
        for p in ([], [2], [2, 3], [2, 3, 5], [2, 3, 5, 7])
    ]
    assert all(a > b for a, b in zip(sums, sums[1:]))


def test_compare_sieved_series_empty_set_is_exact():
    comparison = compare_sieved_series(2.0, 1_000, [])
    assert comparison.partial_product == 1.0
    assert comparison.abs_error <= 1e-12
    assert comparison.passed


def test_compare_sieved_series_examples_pass():
    for primes in ([2], [2, 3], [2, 3, 5, 7, 11]):
        comparison = compare_sieved_series(2.0, 10_000, primes)
        assert comparison.passed
        assert comparison.tail_bound == pytest.approx(
            (1 + comparison.partial_product) * 10_000 ** -1.0, rel=1e-12
        )


def test_survivor_sum_against_tenfold_reference():
    # reference computed at 10x the truncation, never hard-coded
    s, n_max, primes = 2.0, 1_000, (2, 3)
    product = (1 - 2.0 ** -s) * (1 - 3.0 ** -s)
    reference = product * truncated_zeta(s, 10 * n_max).value
    got = survivor_sum(s, n_max, primes)
    _, tail = truncated_zeta(s, n_max)
    assert abs(got - reference) <= (1 + product) * tail


def test_survivor_sum_million_against_closed_form():
    # pi^2/9 computed from math.pi, reached through the partial product
    got = survivor_sum(2.0, 1_000_000, [2, 3])
    reference = (1 - 0.25) * (1 - 1 / 9) * math.pi ** 2 / 6
    bound = (1 + (1 - 0.25) * (1 - 1 / 9)) * 1e-6
    assert abs(got - reference) <= bound


def test_crossing_set_identity_examples():
    assert crossing_set_identity(7, 13)   # empty crossing set, still true
    assert crossing_set_identity(2, 40)
    assert crossing_set_identity(13, 200)
    with pytest.raises(ValueError):
        crossing_set_identity(6, 100)
    with pytest.raises(ValueError):
        crossing_set_identity(7, 5)


@settings(max_examples=30, deadline=None)
@given(
    n_max=st.integers(min_value=1, max_value=1_500),
    primes=st.sets(st.sampled_from([2, 3, 5, 7, 11, 13]), max_size=4),
)
def test_survivor_indices_property(n_max, primes):
    alive = survivor_indices(n_max, primes)
    assert alive[0] == 1
    assert all(all(n % p for p in primes) for n in alive)
    assert len(alive) == sum(1 for n in range(1, n_max + 1) if all(n % p for p in primes))


@settings(max_examples=30, deadline=None)
@given(
    s=st.sampled_from([1.5, 2.0, 3.0]),
    n_max=st.integers(min_value=1, max_value=2_000),
    p=st.sampled_from([2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]),
)
def test_train_factorization_property(s, n_max, p):
    lhs = train_crossing_sum(s, n_max, p)
    if n_max < p:
        assert lhs == 0.0
    else:
        rhs = p ** -s * truncated_zeta(s, n_max // p).value
        assert lhs == pytest.approx(rhs, rel=1e-12)
