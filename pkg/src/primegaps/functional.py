"""The prime-gap power functional, its sandwich bounds, and record tracking.

For exponents ``alpha, beta >= 0`` with ``alpha + beta < 1`` the quantity

    f(n) = p_n^beta * (p_{n+1}^alpha - p_n^alpha)

has vanishing liminf over the primes, and its running extrema over a
scanned range are the computable surrogate for that liminf (and for the
conjectured finite sup).  Everything here evaluates f in the
cancellation-safe form

    f = p^(alpha+beta) * expm1(alpha * log1p(g / p)),      g = q - p,

because the textbook difference ``q^alpha - p^alpha`` loses essentially
all significant digits once ``g / p`` is small (a twin pair near 1e12
leaves no correct bits in double precision).
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .sieve import ConsecutivePair, PairBlock, PrimeBound, SievePlan, iter_pair_blocks

__all__ = [
    "DEFAULT_WITNESS_GAP",
    "ExponentPair",
    "RecordEvent",
    "MvtBounds",
    "RecordKind",
    "eval_functional",
    "eval_functional_arrays",
    "mvt_bounds",
    "record_minima",
    "record_maxima",
    "witness_pairs",
    "scan_records",
    "RecordScanState",
    "run_record_scan",
    "RunningExtreme",
]

# Infinitely many prime pairs differ by exactly 246 (the bounded-gap
# theorem), so gaps <= 246 recur forever; that makes 246 the default
# ceiling when filtering for small-gap witness pairs.
DEFAULT_WITNESS_GAP = 246

RecordKind = Literal["minimum", "maximum"]


@dataclass(frozen=True)
class ExponentPair:
    """Exponents ``(alpha, beta)`` with ``alpha + beta`` strictly below 1.

    The strict sum constraint is the hypothesis under which the functional
    vanishes along some subsequence; ``alpha + beta = 1`` is rejected here
    rather than silently accepted, since the behaviour changes there.
    """

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        alpha = float(self.alpha)
        beta = float(self.beta)
        if not (math.isfinite(alpha) and math.isfinite(beta)):
            raise ValueError(f"exponents must be finite, got ({self.alpha!r}, {self.beta!r})")
        if alpha < 0 or beta < 0:
            raise ValueError(f"exponents must be >= 0, got ({alpha}, {beta})")
        if alpha + beta >= 1:
            raise ValueError(f"alpha + beta must be < 1, got {alpha} + {beta} = {alpha + beta}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def exponent_sum(self) -> float:
        return self.alpha + self.beta


@dataclass(frozen=True)
class RecordEvent:
    """A strict new running minimum or maximum of the functional."""

    n: int
    p: int
    q: int
    g: int
    value: float
    kind: RecordKind

    def __post_init__(self) -> None:
        if self.n < 1 or self.p < 2 or self.q <= self.p or self.g != self.q - self.p:
            raise ValueError(
                f"malformed record: n={self.n}, p={self.p}, q={self.q}, g={self.g}"
            )
        if self.kind not in ("minimum", "maximum"):
            raise ValueError(f"kind must be 'minimum' or 'maximum', got {self.kind!r}")
        if not math.isfinite(self.value):
            raise ValueError(f"record value must be finite, got {self.value!r}")


@dataclass(frozen=True)
class MvtBounds:
    """Mean-value sandwich for one pair: ``lower <= f <= upper``.

    From ``q^a - p^a = g * a * xi^(a-1)`` for some ``xi`` strictly between
    p and q, and ``x^(a-1)`` decreasing for ``a < 1``:

        lower = g * a * p^b * q^(a-1)
        upper = g * a * p^(a+b-1)

    The interior point xi never needs to be located.
    """

    lower: float
    upper: float

    def contains(self, value: float, rel_slack: float = 1e-12) -> bool:
        return self.lower * (1.0 - rel_slack) <= value <= self.upper * (1.0 + rel_slack)


def eval_functional(ab: ExponentPair, pair: ConsecutivePair) -> float:
    """Evaluate ``p^beta * (q^alpha - p^alpha)`` cancellation-safely."""
    return pair.p ** ab.exponent_sum * math.expm1(ab.alpha * math.log1p(pair.g / pair.p))


def eval_functional_arrays(ab: ExponentPair, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Vectorized :func:`eval_functional` over parallel p/q arrays."""
    pf = np.asarray(p, dtype=np.float64)
    g = np.asarray(q, dtype=np.float64) - pf
    return pf ** ab.exponent_sum * np.expm1(ab.alpha * np.log1p(g / pf))


def mvt_bounds(ab: ExponentPair, pair: ConsecutivePair) -> MvtBounds:
    """Sandwich bounds for the pair; requires ``0 < alpha`` (else degenerate)."""
    a = ab.alpha
    if a <= 0.0:
        raise ValueError("mvt_bounds needs 0 < alpha < 1; the sandwich degenerates at alpha = 0")
    lower = pair.g * a * pair.p**ab.beta * pair.q ** (a - 1.0)
    upper = pair.g * a * pair.p ** (ab.exponent_sum - 1.0)
    return MvtBounds(lower, upper)


class RunningExtreme:
    """Strictly-improving running minimum or maximum over an ordered stream.

    Ties never improve the record, so event streams are deterministic and
    the earliest witness of any repeated value wins.
    """

    def __init__(self, kind: RecordKind) -> None:
        if kind not in ("minimum", "maximum"):
            raise ValueError(f"kind must be 'minimum' or 'maximum', got {kind!r}")
        self.kind = kind
        self.best = math.inf if kind == "minimum" else -math.inf

    def update(self, value: float) -> bool:
        """Fold in one value; True when it sets a new record."""
        if self.kind == "minimum":
            if value < self.best:
                self.best = value
                return True
        elif value > self.best:
            self.best = value
            return True
        return False

    def update_block(self, values: np.ndarray) -> np.ndarray:
        """Fold in a block; returns the indices that set records, in order."""
        if values.size == 0:
            return np.empty(0, dtype=np.intp)
        if self.kind == "minimum":
            running = np.minimum.accumulate(values)
            prior = np.empty_like(running)
            prior[0] = self.best
            np.minimum(self.best, running[:-1], out=prior[1:])
            hits = np.flatnonzero(values < prior)
            self.best = min(self.best, float(running[-1]))
        else:
            running = np.maximum.accumulate(values)
            prior = np.empty_like(running)
            prior[0] = self.best
            np.maximum(self.best, running[:-1], out=prior[1:])
            hits = np.flatnonzero(values > prior)
            self.best = max(self.best, float(running[-1]))
        return hits


def _tracked(
    pairs: Iterable[ConsecutivePair], ab: ExponentPair, kind: RecordKind
) -> Iterator[RecordEvent]:
    run = RunningExtreme(kind)
    for pr in pairs:
        value = eval_functional(ab, pr)
        if run.update(value):
            yield RecordEvent(pr.n, pr.p, pr.q, pr.g, value, kind)


def record_minima(pairs: Iterable[ConsecutivePair], ab: ExponentPair) -> Iterator[RecordEvent]:
    """Emit an event whenever f drops strictly below every earlier value."""
    return _tracked(pairs, ab, "minimum")


def record_maxima(pairs: Iterable[ConsecutivePair], ab: ExponentPair) -> Iterator[RecordEvent]:
    """Emit strictly increasing running maxima; the last one is the
    empirical sup over the scanned range (never a proven constant)."""
    return _tracked(pairs, ab, "maximum")


def witness_pairs(
    pairs: Iterable[ConsecutivePair], max_gap: int = DEFAULT_WITNESS_GAP
) -> Iterator[ConsecutivePair]:
    """Pass through exactly the pairs with gap at most ``max_gap``."""
    if max_gap < 1:
        raise ValueError(f"max_gap must be >= 1, got {max_gap}")
    for pr in pairs:
        if pr.g <= max_gap:
            yield pr


def _block_events(
    blk: PairBlock, values: np.ndarray, hits: np.ndarray, kind: RecordKind
) -> list[RecordEvent]:
    out = []
    for i in hits.tolist():
        p = int(blk.p[i])
        q = int(blk.q[i])
        out.append(RecordEvent(blk.n0 + i, p, q, q - p, float(values[i]), kind))
    return out


@dataclass
class RecordScanState:
    """Resumable record-scan progress: fold state plus a stream cursor."""

    ab: ExponentPair
    kind: RecordKind
    best: float
    events: list[RecordEvent]
    cursor_n: int
    cursor_prime: int
    covered: int
    pairs_seen: int

    @classmethod
    def fresh(cls, ab: ExponentPair, kind: RecordKind) -> "RecordScanState":
        best = math.inf if kind == "minimum" else -math.inf
        return cls(ab, kind, best, [], 1, 2, 2, 0)


def run_record_scan(
    bound: int | PrimeBound,
    ab: ExponentPair,
    kind: RecordKind = "minimum",
    plan: SievePlan | None = None,
    *,
    state: RecordScanState | None = None,
    on_block=None,
) -> RecordScanState:
    """Scan pairs below the bound, folding records into ``state``.

    ``state`` from an earlier, smaller run resumes the scan; ``on_block``
    (if given) is called with the state after each block, which is the
    hook used for periodic checkpointing.
    """
    if state is None:
        state = RecordScanState.fresh(ab, kind)
    elif state.ab != ab or state.kind != kind:
        raise ValueError("resume state was built for different exponents or record kind")
    run = RunningExtreme(kind)
    run.best = state.best
    resume = (state.cursor_n, state.cursor_prime) if state.pairs_seen else None
    for blk in iter_pair_blocks(bound, plan, resume=resume):
        values = eval_functional_arrays(ab, blk.p, blk.q)
        hits = run.update_block(values)
        if hits.size:
            state.events.extend(_block_events(blk, values, hits, kind))
            state.best = run.best
        state.pairs_seen += len(blk)
        state.cursor_n = blk.n0 + len(blk)
        state.cursor_prime = int(blk.q[-1])
        state.covered = blk.covered
        if on_block is not None:
            on_block(state)
    return state


def scan_records(
    bound: int | PrimeBound,
    ab: ExponentPair,
    kind: RecordKind = "minimum",
    plan: SievePlan | None = None,
) -> list[RecordEvent]:
    """All record events of the functional over pairs below the bound."""
    return run_record_scan(bound, ab, kind, plan).events
