"""Solve q^gamma - p^gamma = C and scan pair streams for the minimal root.

For naturals 2 <= p < q the map h(gamma) = q^gamma - p^gamma - C is
strictly increasing on gamma >= 0 (its derivative q^g ln q - p^g ln p is
positive), so the equation has exactly one root and bracketing methods
cannot fail.  The solver brackets by doubling, bisects the bracket down
to 1e-6, then polishes with Newton steps until the residual contract
|h| <= 1e-12 * max(1, C) holds.

h is evaluated as exp(g*lp) * expm1(g*l1p) - C with lp = ln p and
l1p = ln(1 + (q-p)/p) precomputed per pair.  This factors out the huge
common part p^gamma before any subtraction happens; differencing
exp(g*ln q) - exp(g*ln p) directly would leave noise around 1e-10 for
pairs near 1e6, two orders of magnitude above the residual contract.

The minimal root over all consecutive pairs below a bound (C = 1 gives
the classical constant 0.56714813..., attained at (113,127)) is found
with a filtered scan: a pair can only beat the current best root b when
h_pair(b) > 0, and that test vectorizes over whole sieve blocks, so full
root solves happen only on the few candidate pairs that survive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sieve import ConsecutivePair, PrimeBound, SievePlan, as_bound, iter_pair_blocks

__all__ = [
    "BISECT_WIDTH",
    "RESIDUAL_RTOL",
    "EMPIRICAL_SCOPE_NOTE",
    "SolveRequest",
    "SolveResult",
    "SolverRangeError",
    "AlphaPoint",
    "AlphaCurve",
    "solve_gamma",
    "smarandache_scan",
    "alpha_of_C",
]

BISECT_WIDTH = 1e-6
RESIDUAL_RTOL = 1e-12

# Minima over a scanned range are evidence, not the conjectured constants;
# nothing proves the true infimum over all pairs is attained below any
# finite bound, so every curve carries this caveat.
EMPIRICAL_SCOPE_NOTE = (
    "empirical minimum over the scanned range; attainment beyond it is conjectural"
)


class SolverRangeError(ArithmeticError):
    """q^gamma overflowed double precision while searching for a bracket."""

    def __init__(self, request: "SolveRequest", gamma: float):
        self.request = request
        self.gamma = gamma
        super().__init__(
            f"q^gamma overflows double precision at gamma={gamma} "
            f"for p={request.p}, q={request.q}, C={request.c}"
        )


@dataclass(frozen=True)
class SolveRequest:
    """One equation instance: find gamma > 0 with q^gamma - p^gamma = C."""

    p: int
    q: int
    c: float

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not isinstance(self.q, int):
            raise ValueError(f"p and q must be integers, got {self.p!r}, {self.q!r}")
        if self.p < 2 or self.q <= self.p:
            raise ValueError(f"need 2 <= p < q, got p={self.p}, q={self.q}")
        c = float(self.c)
        if not math.isfinite(c) or c <= 0:
            raise ValueError(f"C must be finite and > 0, got {self.c!r}")
        object.__setattr__(self, "c", c)


@dataclass(frozen=True)
class SolveResult:
    """Root plus convergence diagnostics.

    ``residual`` is h at the returned root; ``bracket_width_final`` is the
    width of the last maintained sign-change bracket.  ``gamma <= 1``
    exactly when C <= q - p, up to the residual tolerance.
    """

    gamma: float
    residual: float
    iterations: int
    bracket_width_final: float


def _make_h(req: SolveRequest):
    lp = math.log(req.p)
    l1p = math.log1p((req.q - req.p) / req.p)
    c = req.c

    def h(g: float) -> float:
        return math.exp(g * lp) * math.expm1(g * l1p) - c

    def dh(g: float) -> float:
        e1 = math.expm1(g * l1p)
        return math.exp(g * lp) * (e1 * (lp + l1p) + l1p)

    return h, dh


def solve_gamma(req: SolveRequest, *, rtol: float = RESIDUAL_RTOL) -> SolveResult:
    """The unique root of q^gamma - p^gamma = C, to |residual| <= rtol*max(1,C)."""
    h, dh = _make_h(req)
    tol = rtol * max(1.0, req.c)
    iterations = 0
    # h(0) = -C < 0; double the upper end from 1 until it brackets.
    lo = 0.0
    hi = 1.0
    while True:
        try:
            h_hi = h(hi)
        except OverflowError:
            raise SolverRangeError(req, hi) from None
        if not math.isfinite(h_hi):
            raise SolverRangeError(req, hi)
        iterations += 1
        if h_hi >= 0.0:
            break
        lo = hi
        hi *= 2.0
    while hi - lo > BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        iterations += 1
        if h(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(100):
        hx = h(x)
        iterations += 1
        if abs(hx) <= tol:
            return SolveResult(x, hx, iterations, hi - lo)
        if hx < 0.0:
            lo = x
        else:
            hi = x
        step = x - hx / dh(x)
        x = step if lo < step < hi else 0.5 * (lo + hi)
    raise ArithmeticError(
        f"residual {hx} still above {tol} after {iterations} iterations "
        f"for p={req.p}, q={req.q}, C={req.c}"
    )


@dataclass(frozen=True)
class AlphaPoint:
    """Minimal root for one C over the scanned pairs, with its witness."""

    c: float
    alpha: float
    witness: ConsecutivePair
    residual: float


@dataclass(frozen=True)
class AlphaCurve:
    """Minimal-root curve C -> alpha(C), in input grid order."""

    points: tuple[AlphaPoint, ...]
    scanned_below: int
    note: str = EMPIRICAL_SCOPE_NOTE


def alpha_of_C(
    c_values, bound: int | PrimeBound, plan: SievePlan | None = None
) -> AlphaCurve:
    """For each C, the minimal root over all pairs with q below the bound.

    The scan is filtered: with b the best root so far for a given C, a
    later pair can only improve on it when h_pair(b) > 0 (h increases in
    gamma), and that predicate is evaluated for whole blocks at once with
    a safety margin wide enough to cover its own rounding noise.  Ties go
    to the earlier pair, so output is deterministic.
    """
    grid = [float(c) for c in c_values]
    if not grid:
        raise ValueError("need at least one C value")
    for c in grid:
        if not math.isfinite(c) or c <= 0:
            raise ValueError(f"C values must be finite and > 0, got {c!r}")
    b = as_bound(bound)
    if b.limit < 5:
        raise ValueError(f"scanning pairs needs limit >= 5, got {b.limit}")
    best: list[AlphaPoint | None] = [None] * len(grid)
    for blk in iter_pair_blocks(b, plan):
        pf = blk.p.astype(np.float64)
        lp = np.log(pf)
        l1p = np.log1p((blk.q - blk.p) / pf)
        for j, c in enumerate(grid):
            margin = 1e-9 * max(1.0, c)
            point = best[j]
            if point is None:
                candidates = range(len(blk))
            else:
                with np.errstate(over="ignore"):
                    head = np.exp(point.alpha * lp) * np.expm1(point.alpha * l1p)
                candidates = np.flatnonzero(head - c > -margin).tolist()
            for i in candidates:
                p_i = int(blk.p[i])
                q_i = int(blk.q[i])
                point = best[j]
                if point is not None:
                    # Recheck against the live best; the vector filter used
                    # the value from the start of the block.
                    g_best = point.alpha
                    head_i = math.exp(g_best * math.log(p_i)) * math.expm1(
                        g_best * math.log1p((q_i - p_i) / p_i)
                    )
                    if head_i - c <= -margin:
                        continue
                res = solve_gamma(SolveRequest(p_i, q_i, c))
                if point is None or res.gamma < point.alpha:
                    best[j] = AlphaPoint(c, res.gamma, blk.pair_at(i), res.residual)
    points = tuple(best)  # type: ignore[arg-type]
    return AlphaCurve(points, b.limit)


def smarandache_scan(
    bound: int | PrimeBound, plan: SievePlan | None = None
) -> tuple[float, ConsecutivePair]:
    """Minimal root of q^gamma - p^gamma = 1 over pairs below the bound."""
    curve = alpha_of_C([1.0], bound, plan)
    point = curve.points[0]
    return point.alpha, point.witness
