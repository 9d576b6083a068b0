"""Empirical growth statistics for prime gaps.

Three normalized gap ratios are tracked as running maxima over the pair
stream:

  cramer   g / (ln p)^2         the classical heuristic scale for gaps
  bhp      g / p^0.525          the best proven gap exponent's scale
  conj1    q^a - p^a, 0 <= a<1  running sup of the power difference

None of these has a proven finite sup with a known constant, so the
records are reported as observations; nothing here returns pass/fail for
them.  The one checkable statement is :func:`cramer_bound_check`, an
instance of the mean value theorem that must hold for every valid input.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .functional import ExponentPair, RunningExtreme, eval_functional, eval_functional_arrays
from .sieve import ConsecutivePair, PairBlock, PrimeBound, SievePlan, iter_pair_blocks

__all__ = [
    "BHP_EXPONENT",
    "RATIO_KINDS",
    "RatioKind",
    "RatioRecord",
    "cramer_ratio",
    "bhp_ratio",
    "cramer_bound_check",
    "ratio_value",
    "ratio_records",
    "conjecture1_sup",
    "scan_ratio_records",
]

# Largest exponent theta for which g = O(p^theta) is actually proven.
BHP_EXPONENT = 0.525

RatioKind = Literal["cramer", "bhp", "conj1"]
RATIO_KINDS = ("cramer", "bhp", "conj1")


@dataclass(frozen=True)
class RatioRecord:
    """A new running maximum of one normalized gap statistic."""

    n: int
    p: int
    q: int
    g: int
    ratio: float
    kind: RatioKind


def cramer_ratio(pr: ConsecutivePair) -> float:
    """Gap over squared natural log of the smaller member."""
    return pr.g / math.log(pr.p) ** 2


def bhp_ratio(pr: ConsecutivePair) -> float:
    return pr.g / pr.p**BHP_EXPONENT


def cramer_bound_check(p: int, c: float, alpha: float, rel_slack: float = 1e-12) -> bool:
    """Check (p + c(ln p)^2)^alpha - p^alpha <= c*alpha*(ln p)^2*p^(alpha-1).

    This is the mean value theorem applied to x^alpha on an interval of
    length c(ln p)^2, with x^(alpha-1) decreasing; it holds for every
    p >= 2, c > 0, 0 < alpha < 1, so a False return (beyond the rounding
    slack) indicates an evaluation bug, not an interesting input.
    """
    if not isinstance(p, int) or isinstance(p, bool) or p < 2:
        raise ValueError(f"p must be an integer >= 2, got {p!r}")
    c = float(c)
    if not math.isfinite(c) or c <= 0:
        raise ValueError(f"c must be finite and > 0, got {c!r}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    width = c * math.log(p) ** 2
    lhs = p**alpha * math.expm1(alpha * math.log1p(width / p))
    rhs = alpha * width * p ** (alpha - 1.0)
    return lhs <= rhs * (1.0 + rel_slack)


def ratio_value(kind: RatioKind, pr: ConsecutivePair, alpha: float | None = None) -> float:
    if kind == "cramer":
        return cramer_ratio(pr)
    if kind == "bhp":
        return bhp_ratio(pr)
    if kind == "conj1":
        if alpha is None:
            raise ValueError("the conj1 statistic needs an alpha")
        return eval_functional(ExponentPair(alpha, 0.0), pr)
    raise ValueError(f"unknown ratio kind {kind!r}")


def _block_ratios(kind: RatioKind, alpha: float | None, blk: PairBlock) -> np.ndarray:
    if kind == "conj1":
        if alpha is None:
            raise ValueError("the conj1 statistic needs an alpha")
        return eval_functional_arrays(ExponentPair(alpha, 0.0), blk.p, blk.q)
    pf = blk.p.astype(np.float64)
    g = (blk.q - blk.p).astype(np.float64)
    if kind == "cramer":
        return g / np.log(pf) ** 2
    if kind == "bhp":
        return g / pf**BHP_EXPONENT
    raise ValueError(f"unknown ratio kind {kind!r}")


def ratio_records(
    pairs: Iterable[ConsecutivePair], kind: RatioKind, alpha: float | None = None
) -> Iterator[RatioRecord]:
    """Strictly increasing running maxima of the chosen statistic."""
    run = RunningExtreme("maximum")
    for pr in pairs:
        r = ratio_value(kind, pr, alpha)
        if run.update(r):
            yield RatioRecord(pr.n, pr.p, pr.q, pr.g, r, kind)


def conjecture1_sup(
    pairs: Iterable[ConsecutivePair], alpha: float
) -> Iterator[RatioRecord]:
    """Running sup of q^alpha - p^alpha; the last record is the empirical
    bound constant for the scanned range."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha!r}")
    return ratio_records(pairs, "conj1", alpha)


def scan_ratio_records(
    bound: int | PrimeBound,
    kind: RatioKind,
    alpha: float | None = None,
    plan: SievePlan | None = None,
) -> list[RatioRecord]:
    """Block-vectorized :func:`ratio_records` over all pairs below the bound."""
    run = RunningExtreme("maximum")
    out: list[RatioRecord] = []
    for blk in iter_pair_blocks(bound, plan):
        ratios = _block_ratios(kind, alpha, blk)
        for i in run.update_block(ratios).tolist():
            p = int(blk.p[i])
            q = int(blk.q[i])
            out.append(RatioRecord(blk.n0 + i, p, q, q - p, float(ratios[i]), kind))
    return out
