"""Prime gaps between powers of consecutive primes.

A segmented sieve streams consecutive prime pairs (p, q) to four
analyses: exact verification that sqrt(q) - sqrt(p) < 1 on a range,
record tracking of p^beta * (q^alpha - p^alpha) with mean-value sandwich
bounds, solving q^gamma - p^gamma = C for the minimal exponent over a
range, and running maxima of normalized gap ratios.  All floating-point
evaluation of near-cancelling power differences goes through expm1/log1p
forms so results stay accurate out to pairs near 1e12.
"""

from .andrica import AndricaReport, andrica_holds_exact, andrica_value, verify_range
from .checkpoint import Checkpoint, CheckpointError, load_checkpoint, save_checkpoint
from .functional import (
    DEFAULT_WITNESS_GAP,
    ExponentPair,
    MvtBounds,
    RecordEvent,
    eval_functional,
    mvt_bounds,
    record_maxima,
    record_minima,
    scan_records,
    witness_pairs,
)
from .gapstats import (
    BHP_EXPONENT,
    RatioRecord,
    bhp_ratio,
    conjecture1_sup,
    cramer_bound_check,
    cramer_ratio,
    ratio_records,
)
from .sieve import (
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
from .solver import (
    AlphaCurve,
    AlphaPoint,
    SolveRequest,
    SolveResult,
    SolverRangeError,
    alpha_of_C,
    smarandache_scan,
    solve_gamma,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaCurve",
    "AlphaPoint",
    "AndricaReport",
    "BHP_EXPONENT",
    "CapacityError",
    "Checkpoint",
    "CheckpointError",
    "ConsecutivePair",
    "DEFAULT_WITNESS_GAP",
    "ExponentPair",
    "MvtBounds",
    "PrimeBound",
    "RatioRecord",
    "RecordEvent",
    "SievePlan",
    "SolveRequest",
    "SolveResult",
    "SolverRangeError",
    "alpha_of_C",
    "andrica_holds_exact",
    "andrica_value",
    "bhp_ratio",
    "conjecture1_sup",
    "cramer_bound_check",
    "cramer_ratio",
    "eval_functional",
    "iter_primes",
    "load_checkpoint",
    "mvt_bounds",
    "pair",
    "pair_stream",
    "prime_count",
    "primes_up_to",
    "ratio_records",
    "record_maxima",
    "record_minima",
    "save_checkpoint",
    "scan_records",
    "smarandache_scan",
    "solve_gamma",
    "verify_range",
    "witness_pairs",
    "__version__",
]
