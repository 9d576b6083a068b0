"""Segmented prime sieve and ordered consecutive-pair streaming.

Primes are produced by an odd-only segmented sieve of Eratosthenes: each
window of the number line is sieved as a byte mask over its odd members,
struck with the base primes up to the square root of the overall bound.
Windows are processed independently (optionally on a thread pool) and
re-assembled in order, so every stream below is deterministic and
independent of segment size and thread count.

The pair stream carries 1-based indexing with ``p_1 = 2``: the n-th pair
is ``(p_n, p_{n+1})`` and is emitted once ``p_{n+1}`` has been sieved,
which puts every boundary-straddling pair in the later of its two
segments, exactly once.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from collections.abc import Iterable, Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MAX_LIMIT",
    "DEFAULT_SEGMENT_SPAN",
    "MIN_SEGMENT_SPAN",
    "CapacityError",
    "PrimeBound",
    "SievePlan",
    "ConsecutivePair",
    "PairBlock",
    "primes_up_to",
    "iter_primes",
    "iter_prime_blocks",
    "iter_pair_blocks",
    "pair_stream",
    "prime_count",
]

# Prime values are kept in int64 arrays; bounds beyond 2^63 are rejected.
MAX_LIMIT = 1 << 63

DEFAULT_SEGMENT_SPAN = 1 << 20
MIN_SEGMENT_SPAN = 1 << 16

# Odd-only segment representation: the stored wheel period is 2 and spans
# must stay aligned to it.
WHEEL_PERIOD = 2

# primes_up_to materializes one int64 per prime; refuse to allocate more
# than this many bytes and point the caller at the streaming forms.
DEFAULT_MATERIALIZE_BUDGET = 1 << 30


class CapacityError(ValueError):
    """A non-streaming call would materialize more than its memory budget."""


def _require_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class PrimeBound:
    """Exclusive upper bound on the primes considered by a run."""

    limit: int

    def __post_init__(self) -> None:
        limit = _require_int(self.limit, "limit")
        if limit < 3:
            raise ValueError(f"limit must be >= 3, got {limit}")
        if limit > MAX_LIMIT:
            raise ValueError(f"limit must be <= 2**63, got {limit}")
        object.__setattr__(self, "limit", limit)


def as_bound(bound: int | PrimeBound) -> PrimeBound:
    """Coerce a plain integer to a validated :class:`PrimeBound`."""
    if isinstance(bound, PrimeBound):
        return bound
    return PrimeBound(bound)


@dataclass(frozen=True)
class SievePlan:
    """Tunable sieving parameters: window width and worker threads."""

    segment_span: int = DEFAULT_SEGMENT_SPAN
    thread_count: int = 1

    def __post_init__(self) -> None:
        span = _require_int(self.segment_span, "segment_span")
        threads = _require_int(self.thread_count, "thread_count")
        if span < MIN_SEGMENT_SPAN:
            raise ValueError(f"segment_span must be >= {MIN_SEGMENT_SPAN}, got {span}")
        if span % WHEEL_PERIOD:
            raise ValueError(f"segment_span must be a multiple of {WHEEL_PERIOD}, got {span}")
        if threads < 1:
            raise ValueError(f"thread_count must be >= 1, got {threads}")
        object.__setattr__(self, "segment_span", span)
        object.__setattr__(self, "thread_count", threads)


@dataclass(frozen=True)
class ConsecutivePair:
    """A pair of consecutive primes ``(p, q)`` with its 1-based index.

    Only the structural invariants (ordering and gap arithmetic) are
    enforced here; primality is guaranteed by construction when pairs come
    out of the sieve, and synthetic non-prime pairs are deliberately
    allowed so that pure-arithmetic code paths can be exercised on them.
    """

    n: int
    p: int
    q: int
    g: int

    def __post_init__(self) -> None:
        n = _require_int(self.n, "n")
        p = _require_int(self.p, "p")
        q = _require_int(self.q, "q")
        g = _require_int(self.g, "g")
        if n < 1:
            raise ValueError(f"pair index must be >= 1, got {n}")
        if p < 2:
            raise ValueError(f"p must be >= 2, got {p}")
        if q <= p:
            raise ValueError(f"need p < q, got p={p}, q={q}")
        if g != q - p:
            raise ValueError(f"gap mismatch: g={g} but q - p = {q - p}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "g", g)


def pair(n: int, p: int, q: int) -> ConsecutivePair:
    """Build a :class:`ConsecutivePair` with the gap filled in."""
    return ConsecutivePair(n, p, q, q - p)


@dataclass(frozen=True)
class PairBlock:
    """A contiguous run of consecutive-prime pairs in array form.

    ``p[i]`` and ``q[i]`` are the members of pair ``n0 + i``.  ``covered``
    is the exclusive bound below which every pair has now been emitted
    (the sieved boundary of the block's window).
    """

    n0: int
    p: np.ndarray
    q: np.ndarray
    covered: int

    def __len__(self) -> int:
        return self.p.size

    @property
    def g(self) -> np.ndarray:
        return self.q - self.p

    def pair_at(self, i: int) -> ConsecutivePair:
        return pair(self.n0 + i, int(self.p[i]), int(self.q[i]))


def _small_primes(n: int) -> np.ndarray:
    """Dense sieve for the base primes; ``n`` is tiny (at most ~3e9**0.5)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def _base_primes(limit: int) -> np.ndarray:
    return _small_primes(math.isqrt(limit - 1))


def _sieve_segment(lo: int, hi: int, odd_base: list[int]) -> np.ndarray:
    """Primes in ``[lo, hi)`` as an int64 array, for ``3 <= lo < hi``."""
    first = lo | 1
    count = (hi - first + 1) // 2
    if count <= 0:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(count, dtype=bool)
    for p in odd_base:
        pp = p * p
        if pp >= hi:
            break
        start = ((first + p - 1) // p) * p
        if start < pp:
            start = pp
        if not start & 1:
            start += p
        if start >= hi:
            continue
        mask[(start - first) >> 1 :: p] = False
    return first + 2 * np.flatnonzero(mask)


def _windows(start: int, limit: int, span: int) -> Iterator[tuple[int, int]]:
    lo = start
    while lo < limit:
        hi = min(lo + span, limit)
        yield lo, hi
        lo = hi


def _ordered_segments(
    windows: Iterable[tuple[int, int]], odd_base: list[int], threads: int
) -> Iterator[np.ndarray]:
    """Sieve windows on a thread pool, yielding results in window order."""
    windows = iter(windows)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        pending = deque(
            pool.submit(_sieve_segment, lo, hi, odd_base)
            for lo, hi in itertools.islice(windows, threads + 2)
        )
        while pending:
            done = pending.popleft()
            nxt = next(windows, None)
            if nxt is not None:
                pending.append(pool.submit(_sieve_segment, nxt[0], nxt[1], odd_base))
            yield done.result()


def iter_prime_blocks(
    bound: int | PrimeBound,
    plan: SievePlan | None = None,
    *,
    start: int = 2,
) -> Iterator[tuple[np.ndarray, int]]:
    """Yield ``(primes, covered)`` per window, in increasing order.

    ``covered`` is the exclusive bound fully sieved once the block has been
    yielded.  ``start`` restricts output to primes ``>= start``.
    """
    b = as_bound(bound)
    plan = plan or SievePlan()
    limit = b.limit
    if start <= 2 < limit:
        yield np.array([2], dtype=np.int64), 3
    lo0 = max(start, 3)
    if lo0 >= limit:
        return
    odd_base = _base_primes(limit)[1:].tolist()
    if plan.thread_count == 1:
        for lo, hi in _windows(lo0, limit, plan.segment_span):
            yield _sieve_segment(lo, hi, odd_base), hi
    else:
        window_list = list(_windows(lo0, limit, plan.segment_span))
        segments = _ordered_segments(window_list, odd_base, plan.thread_count)
        for seg, (_, hi) in zip(segments, window_list):
            yield seg, hi


def primes_up_to(
    bound: int | PrimeBound,
    plan: SievePlan | None = None,
    *,
    memory_budget: int = DEFAULT_MATERIALIZE_BUDGET,
) -> np.ndarray:
    """All primes below the bound as one strictly increasing int64 array.

    Raises :class:`CapacityError` when the result would exceed
    ``memory_budget`` bytes; use :func:`iter_primes` or
    :func:`iter_prime_blocks` for bounds of that size.
    """
    b = as_bound(bound)
    x = float(b.limit)
    # Chebyshev-style overestimate of pi(x); only used for the budget gate.
    estimated = int(1.3 * x / math.log(x)) + 16
    if estimated * 8 > memory_budget:
        raise CapacityError(
            f"primes below {b.limit} would need roughly {estimated * 8} bytes "
            f"(budget {memory_budget}); use iter_primes() or iter_prime_blocks() instead"
        )
    blocks = [seg for seg, _ in iter_prime_blocks(b, plan)]
    if not blocks:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(blocks)


def iter_primes(bound: int | PrimeBound, plan: SievePlan | None = None) -> Iterator[int]:
    """Stream primes below the bound one at a time."""
    for seg, _ in iter_prime_blocks(bound, plan):
        yield from seg.tolist()


def prime_count(bound: int | PrimeBound, plan: SievePlan | None = None) -> int:
    """Number of primes below the bound."""
    return sum(seg.size for seg, _ in iter_prime_blocks(bound, plan))


def iter_pair_blocks(
    bound: int | PrimeBound,
    plan: SievePlan | None = None,
    *,
    resume: tuple[int, int] | None = None,
) -> Iterator[PairBlock]:
    """Yield consecutive-prime pairs in array blocks, in index order.

    With ``resume=(n, prime)`` the stream continues from pair ``n``, whose
    smaller member ``prime`` has already been sieved by an earlier run;
    the values emitted are identical to the tail of a fresh stream.
    """
    b = as_bound(bound)
    if resume is None:
        n_next = 1
        prev: int | None = None
        start = 2
    else:
        n_next, prev = resume
        n_next = _require_int(n_next, "resume index")
        prev = _require_int(prev, "resume prime")
        if n_next < 1 or prev < 2:
            raise ValueError(f"invalid resume cursor {resume!r}")
        start = prev + 1
    for seg, covered in iter_prime_blocks(b, plan, start=start):
        if not seg.size:
            continue
        if prev is None:
            ps = seg[:-1]
            qs = seg[1:]
        else:
            ps = np.concatenate(([prev], seg[:-1]))
            qs = seg
        prev = int(seg[-1])
        if ps.size:
            yield PairBlock(n_next, ps, qs, covered)
            n_next += ps.size


def pair_stream(
    bound: int | PrimeBound, plan: SievePlan | None = None
) -> Iterator[ConsecutivePair]:
    """Stream every consecutive pair ``(n, p_n, p_{n+1})`` with ``p_{n+1}`` below the bound."""
    b = as_bound(bound)
    if b.limit < 5:
        raise ValueError(f"pair streaming needs limit >= 5, got {b.limit}")
    for blk in iter_pair_blocks(b, plan):
        ps = blk.p.tolist()
        qs = blk.q.tolist()
        for i, (p, q) in enumerate(zip(ps, qs)):
            yield ConsecutivePair(blk.n0 + i, p, q, q - p)
