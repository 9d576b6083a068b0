"""Exact verification that consecutive prime square roots differ by less than 1.

The inequality sqrt(q) - sqrt(p) < 1 for a consecutive pair is decided in
pure integer arithmetic through the equivalent form

    (g - 1)^2 < 4 p,        g = q - p >= 1,

so no floating-point tie near 1 can ever make a verdict ambiguous.  The
float value g / (sqrt(q) + sqrt(p)) is computed alongside purely for
reporting and for locating the maximum-value witness.  Long ranges are
processed in sieve blocks with periodic atomic checkpoints, and a run can
resume from a checkpoint with results identical to an uninterrupted run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .checkpoint import Checkpoint, pair_from_dict, pair_to_dict, save_checkpoint
from .sieve import ConsecutivePair, PrimeBound, SievePlan, as_bound, iter_pair_blocks

__all__ = [
    "CHECKPOINT_CADENCE",
    "AndricaReport",
    "andrica_holds_exact",
    "andrica_value",
    "andrica_value_arrays",
    "verify_range",
]

# Numbers newly covered between checkpoint writes.
CHECKPOINT_CADENCE = 10**7

# Bulk blocks use int64; (g-1)^2 and 4p both stay below 2^63 under these
# caps, and anything larger falls back to arbitrary-precision integers.
_BULK_P_CAP = 1 << 61
_BULK_G_CAP = 1 << 31


def andrica_holds_exact(pr: ConsecutivePair) -> bool:
    """True iff sqrt(q) - sqrt(p) < 1, decided without floating point.

    Both sides of g - 1 < 2 sqrt(p) are nonnegative, so squaring is an
    equivalence; Python integers make the comparison exact at any size.
    """
    gm1 = pr.g - 1
    return gm1 * gm1 < 4 * pr.p


def andrica_value(pr: ConsecutivePair) -> float:
    """sqrt(q) - sqrt(p), computed as g / (sqrt(q) + sqrt(p)).

    The rewritten form divides instead of subtracting two nearly equal
    square roots, which keeps the relative error near machine epsilon even
    for pairs around 1e12 where the direct difference has no correct bits.
    """
    return pr.g / (math.sqrt(pr.q) + math.sqrt(pr.p))


def andrica_value_arrays(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Vectorized :func:`andrica_value` over parallel p/q arrays."""
    pf = np.asarray(p, dtype=np.float64)
    qf = np.asarray(q, dtype=np.float64)
    return (qf - pf) / (np.sqrt(qf) + np.sqrt(pf))


def _holds_block(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    gm1 = (q - p) - 1
    if int(p[-1]) < _BULK_P_CAP and int(gm1.max()) < _BULK_G_CAP:
        return gm1 * gm1 < 4 * p
    flags = [
        (int(gg)) ** 2 < 4 * int(pp) for pp, gg in zip(p.tolist(), gm1.tolist())
    ]
    return np.array(flags, dtype=bool)


@dataclass(frozen=True)
class AndricaReport:
    """Outcome of a range verification.

    ``verified_below`` is exclusive: every pair with q below it was
    checked.  ``violations`` is expected empty; the verifier still records
    offenders and finishes the range rather than aborting, so a report is
    always a complete census.
    """

    verified_below: int
    pairs_checked: int
    violations: tuple[ConsecutivePair, ...]
    max_witness: ConsecutivePair | None
    max_value: float | None

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_range(
    bound: int | PrimeBound,
    plan: SievePlan | None = None,
    *,
    checkpoint: Checkpoint | None = None,
    checkpoint_path: str | None = None,
    cadence: int = CHECKPOINT_CADENCE,
) -> AndricaReport:
    """Check every pair with q below the bound; resumable.

    ``checkpoint`` (if given) must come from a compatible earlier run with
    a bound no larger than this one; verification continues past its
    cursor and the merged report is identical to a fresh full run.  With
    ``checkpoint_path`` set, progress is persisted atomically roughly every
    ``cadence`` numbers and once more on completion.
    """
    b = as_bound(bound)
    if checkpoint is not None:
        checkpoint.require_compatible("andrica", {}, b.limit)
        n_next = checkpoint.cursor_n
        cursor_prime = checkpoint.cursor_prime
        covered = checkpoint.verified_below
        violations = [pair_from_dict(d) for d in checkpoint.violations]
        best_pair = (
            pair_from_dict(checkpoint.max_witness)
            if checkpoint.max_witness is not None
            else None
        )
        best_value = -math.inf if checkpoint.max_value is None else checkpoint.max_value
        resume = (n_next, cursor_prime)
    else:
        n_next = 1
        cursor_prime = 2
        covered = 2
        violations = []
        best_pair = None
        best_value = -math.inf
        resume = None
    last_saved = covered

    def snapshot() -> Checkpoint:
        return Checkpoint(
            command="andrica",
            verified_below=covered,
            cursor_n=n_next,
            cursor_prime=cursor_prime,
            params={},
            max_witness=None if best_pair is None else pair_to_dict(best_pair),
            max_value=None if best_pair is None else best_value,
            violations=[pair_to_dict(v) for v in violations],
        )

    for blk in iter_pair_blocks(b, plan, resume=resume):
        ok = _holds_block(blk.p, blk.q)
        if not ok.all():
            for i in np.flatnonzero(~ok).tolist():
                violations.append(blk.pair_at(i))
        values = andrica_value_arrays(blk.p, blk.q)
        i = int(np.argmax(values))
        if float(values[i]) > best_value:
            best_value = float(values[i])
            best_pair = blk.pair_at(i)
        n_next += len(blk)
        cursor_prime = int(blk.q[-1])
        covered = blk.covered
        if checkpoint_path is not None and covered - last_saved >= cadence:
            save_checkpoint(checkpoint_path, snapshot())
            last_saved = covered
    covered = b.limit
    if checkpoint_path is not None:
        save_checkpoint(checkpoint_path, snapshot())
    return AndricaReport(
        verified_below=b.limit,
        pairs_checked=n_next - 1,
        violations=tuple(violations),
        max_witness=best_pair,
        max_value=None if best_pair is None else best_value,
    )
