import random

import numpy as np
import pytest

import oracles
from primegaps import (
    CapacityError,
    ConsecutivePair,
    PrimeBound,
    SievePlan,
    iter_primes,
    pair,
    pair_stream,
    prime_count,
    primes_up_to,
)
from primegaps.sieve import iter_pair_blocks, iter_prime_blocks

from conftest import SEED


def test_primes_up_to_ten():
    assert primes_up_to(10).tolist() == [2, 3, 5, 7]


def test_limit_two_rejected():
    with pytest.raises(ValueError):
        primes_up_to(2)
    with pytest.raises(ValueError):
        PrimeBound(2)


def test_limit_above_64_bit_rejected():
    with pytest.raises(ValueError):
        PrimeBound((1 << 63) + 1)


def test_matches_trial_division_small_limits():
    oracle = oracles.trial_division_primes(2000)
    for limit in range(3, 2000, 37):
        expected = [p for p in oracle if p < limit]
        assert primes_up_to(limit).tolist() == expected


def test_matches_trial_division_random_limits():
    oracle = oracles.trial_division_primes(10**5)
    rng = random.Random(SEED)
    for _ in range(25):
        limit = rng.randint(3, 10**5)
        expected = [p for p in oracle if p < limit]
        assert primes_up_to(limit).tolist() == expected


def test_matches_independent_dense_sieve():
    assert primes_up_to(10**6).tolist() == oracles.dense_sieve_primes(10**6)


def test_prime_counts():
    assert prime_count(10) == 4
    assert prime_count(10**6) == 78498


def test_iter_primes_agrees_with_materialized():
    assert list(iter_primes(10**4)) == primes_up_to(10**4).tolist()


def test_capacity_error_names_streaming_alternative():
    with pytest.raises(CapacityError, match="iter_primes"):
        primes_up_to(10**8, memory_budget=1024)


def test_segment_boundaries_do_not_lose_primes():
    # Primes straddling window edges must appear exactly once.
    span = 1 << 16
    plan = SievePlan(segment_span=span)
    for limit in (span - 1, span, span + 1, 3 * span - 1, 3 * span + 5):
        got = primes_up_to(limit, plan).tolist()
        assert got == oracles.dense_sieve_primes(limit)


def test_plan_validation():
    with pytest.raises(ValueError):
        SievePlan(segment_span=1 << 15)
    with pytest.raises(ValueError):
        SievePlan(segment_span=(1 << 16) + 1)
    with pytest.raises(ValueError):
        SievePlan(thread_count=0)


def test_pair_validation():
    with pytest.raises(ValueError):
        ConsecutivePair(1, 1, 3, 2)
    with pytest.raises(ValueError):
        ConsecutivePair(1, 5, 5, 0)
    with pytest.raises(ValueError):
        ConsecutivePair(1, 5, 7, 3)
    with pytest.raises(ValueError):
        ConsecutivePair(0, 5, 7, 2)
    assert pair(4, 7, 11).g == 4


def test_pair_stream_first_pairs():
    got = [(pr.n, pr.p, pr.q, pr.g) for pr in pair_stream(12)]
    assert got == [(1, 2, 3, 1), (2, 3, 5, 2), (3, 5, 7, 2), (4, 7, 11, 4)]


def test_pair_stream_limit_30():
    # Ten primes below 30 give nine consecutive pairs, ending at (23, 29).
    got = list(pair_stream(30))
    assert len(got) == 9
    assert (got[-1].p, got[-1].q) == (23, 29)


def test_pair_stream_needs_limit_5():
    with pytest.raises(ValueError):
        list(pair_stream(4))


def test_pair_stream_consecutiveness(pairs_1e5):
    primes = oracles.dense_sieve_primes(10**5)
    assert len(pairs_1e5) == len(primes) - 1
    for i, pr in enumerate(pairs_1e5):
        assert pr.n == i + 1
        assert pr.p == primes[i]
        assert pr.q == primes[i + 1]
        assert pr.g == pr.q - pr.p
    for a, b in zip(pairs_1e5, pairs_1e5[1:]):
        assert b.n == a.n + 1
        assert b.p == a.q


def test_gap_parity(pairs_1e5):
    for pr in pairs_1e5:
        if pr.p == 2:
            assert pr.g == 1
        else:
            assert pr.g % 2 == 0


def test_last_pair_below_1e6():
    primes = oracles.dense_sieve_primes(10**6)
    *_, last = iter_pair_blocks(10**6)
    assert int(last.q[-1]) == primes[-1] == 999983


def test_pair_blocks_cover_exactly_once():
    blocks = list(iter_pair_blocks(10**5, SievePlan(segment_span=1 << 16)))
    ns = np.concatenate([np.arange(b.n0, b.n0 + len(b)) for b in blocks])
    assert ns.tolist() == list(range(1, len(ns) + 1))
    ps = np.concatenate([b.p for b in blocks])
    qs = np.concatenate([b.q for b in blocks])
    primes = oracles.dense_sieve_primes(10**5)
    assert ps.tolist() == primes[:-1]
    assert qs.tolist() == primes[1:]


def test_pair_blocks_resume_matches_fresh():
    fresh_p = np.concatenate([b.p for b in iter_pair_blocks(10**5)])
    fresh_q = np.concatenate([b.q for b in iter_pair_blocks(10**5)])
    k = 1000
    resume = (k + 1, int(fresh_p[k]))
    tail_p = np.concatenate([b.p for b in iter_pair_blocks(10**5, resume=resume)])
    tail_q = np.concatenate([b.q for b in iter_pair_blocks(10**5, resume=resume)])
    assert tail_p.tolist() == fresh_p[k:].tolist()
    assert tail_q.tolist() == fresh_q[k:].tolist()
    first = next(iter_pair_blocks(10**5, resume=resume))
    assert first.n0 == k + 1


def test_span_and_thread_invariance():
    base = None
    for span in (1 << 16, 1 << 20):
        for threads in (1, 3):
            plan = SievePlan(segment_span=span, thread_count=threads)
            ps = np.concatenate([b.p for b in iter_pair_blocks(3 * 10**6, plan)])
            if base is None:
                base = ps
            else:
                assert np.array_equal(base, ps)


def test_prime_blocks_start_parameter():
    full = primes_up_to(10**4).tolist()
    got = []
    for seg, _ in iter_prime_blocks(10**4, start=101):
        got.extend(seg.tolist())
    assert got == [p for p in full if p >= 101]
