"""Command-line front end.

Subcommands map one-to-one onto the library's analyses:

  andrica      exact verification that sqrt(q) - sqrt(p) < 1 on a range
  records      running minima/maxima of p^beta * (q^alpha - p^alpha)
  smarandache  minimal gamma with q^gamma - p^gamma = 1, with witness
  alpha-curve  the same minimal gamma per C over a grid of C values
  gapstats     running maxima of normalized gap ratios

Output goes to stdout as CSV (fixed headers, LF newlines, reals with 17
significant digits) or as JSON carrying the same rows plus a meta object.
Identical configurations produce byte-identical output, regardless of the
thread count.  Exit codes: 0 success, 1 a violation or solver failure was
found, 2 usage or checkpoint errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .andrica import verify_range
from .checkpoint import (
    SCHEMA_VERSION,
    Checkpoint,
    CheckpointError,
    event_from_dict,
    event_to_dict,
    load_checkpoint,
    save_checkpoint,
)
from .functional import ExponentPair, RecordScanState, run_record_scan
from .gapstats import scan_ratio_records
from .sieve import PrimeBound, SievePlan
from .solver import SolverRangeError, alpha_of_C

__all__ = ["main", "parse_limit"]

THREADS_ENV = "PRIMEGAPS_THREADS"
CHECKPOINT_CADENCE = 10**7

ANDRICA_COLUMNS = ("verified_below", "pairs_checked", "violations", "witness_p", "witness_q", "max_value")
RECORDS_COLUMNS = ("n", "p", "q", "gap", "value")
CURVE_COLUMNS = ("C", "alpha", "witness_p", "witness_q", "residual")
GAPSTATS_COLUMNS = ("kind", "n", "p", "q", "gap", "ratio")


class UsageError(argparse.ArgumentTypeError):
    """Bad flag value or flag combination; mapped to exit code 2."""


def parse_limit(text: str) -> int:
    """Parse a bound given as digits, digits with underscores, or scientific
    notation ('426000000', '100_000_000', '4.26e8')."""
    t = text.strip().replace("_", "")
    try:
        return int(t)
    except ValueError:
        pass
    try:
        x = float(t)
    except ValueError:
        raise UsageError(f"cannot parse {text!r} as a bound") from None
    if not math.isfinite(x) or x != math.floor(x):
        raise UsageError(f"bound must be a whole number, got {text!r}")
    return int(x)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise UsageError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise UsageError(f"expected a positive integer, got {text!r}")
    return value


def _c_list(text: str) -> list[float]:
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            out.append(float(token))
        except ValueError:
            raise UsageError(f"cannot parse {token!r} as a C value") from None
    if not out:
        raise UsageError(f"no C values in {text!r}")
    return out


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get(THREADS_ENV)
    if env is None:
        return 1
    try:
        return _positive_int(env)
    except UsageError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {env!r}") from None


def _plan(args) -> SievePlan:
    return SievePlan(segment_span=args.segment_span, thread_count=_threads(args))


def _pair_limit(args) -> int:
    limit = args.limit
    if limit < 5:
        raise UsageError(f"this command scans prime pairs and needs --limit >= 5, got {limit}")
    PrimeBound(limit)
    return limit


def _fmt_cell(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _emit(args, command: str, limit: int, alpha, beta, columns, rows) -> None:
    if args.format == "csv":
        lines = [",".join(columns)]
        for row in rows:
            lines.append(",".join(_fmt_cell(row[c]) for c in columns))
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        doc = {
            "meta": {
                "command": command,
                "limit": limit,
                "alpha": alpha,
                "beta": beta,
                "schema_version": SCHEMA_VERSION,
            },
            "rows": list(rows),
        }
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _load_for_resume(args, command: str, params: dict, limit: int) -> Checkpoint | None:
    if not args.resume:
        return None
    if not args.checkpoint:
        raise UsageError("--resume requires --checkpoint")
    cp = load_checkpoint(args.checkpoint)
    cp.require_compatible(command, params, limit)
    return cp


def _cmd_andrica(args) -> int:
    limit = _pair_limit(args)
    plan = _plan(args)
    cp = _load_for_resume(args, "andrica", {}, limit)
    report = verify_range(
        limit,
        plan,
        checkpoint=cp,
        checkpoint_path=args.checkpoint,
        cadence=CHECKPOINT_CADENCE,
    )
    witness = report.max_witness
    rows = [
        {
            "verified_below": report.verified_below,
            "pairs_checked": report.pairs_checked,
            "violations": len(report.violations),
            "witness_p": witness.p,
            "witness_q": witness.q,
            "max_value": report.max_value,
        }
    ]
    _emit(args, "andrica", limit, None, None, ANDRICA_COLUMNS, rows)
    for pr in report.violations:
        print(f"violation: n={pr.n} p={pr.p} q={pr.q} gap={pr.g}", file=sys.stderr)
    return 0 if report.ok else 1


def _cmd_records(args) -> int:
    limit = _pair_limit(args)
    plan = _plan(args)
    try:
        ab = ExponentPair(args.alpha, args.beta)
    except ValueError as exc:
        raise UsageError(f"{exc} (the vanishing-liminf hypothesis needs alpha + beta < 1)") from None
    kind = "minimum" if args.kind == "min" else "maximum"
    params = {"alpha": ab.alpha, "beta": ab.beta, "kind": kind}
    cp = _load_for_resume(args, "records", params, limit)
    if cp is None:
        state = RecordScanState.fresh(ab, kind)
    else:
        events = [event_from_dict(d) for d in cp.records_so_far]
        best = events[-1].value if events else (math.inf if kind == "minimum" else -math.inf)
        state = RecordScanState(
            ab=ab,
            kind=kind,
            best=best,
            events=events,
            cursor_n=cp.cursor_n,
            cursor_prime=cp.cursor_prime,
            covered=cp.verified_below,
            pairs_seen=cp.cursor_n - 1,
        )
    on_block = None
    if args.checkpoint:
        last_saved = state.covered

        def snapshot(st: RecordScanState) -> Checkpoint:
            return Checkpoint(
                command="records",
                verified_below=st.covered,
                cursor_n=st.cursor_n,
                cursor_prime=st.cursor_prime,
                params=params,
                records_so_far=[event_to_dict(e) for e in st.events],
            )

        def on_block(st: RecordScanState) -> None:
            nonlocal last_saved
            if st.covered - last_saved >= CHECKPOINT_CADENCE:
                save_checkpoint(args.checkpoint, snapshot(st))
                last_saved = st.covered

    state = run_record_scan(limit, ab, kind, plan, state=state, on_block=on_block)
    if args.checkpoint:
        state.covered = limit
        save_checkpoint(args.checkpoint, snapshot(state))
    rows = [
        {"n": ev.n, "p": ev.p, "q": ev.q, "gap": ev.g, "value": ev.value}
        for ev in state.events
    ]
    _emit(args, "records", limit, ab.alpha, ab.beta, RECORDS_COLUMNS, rows)
    return 0


def _curve_rows(c_values, limit: int, plan: SievePlan):
    curve = alpha_of_C(c_values, limit, plan)
    return [
        {
            "C": pt.c,
            "alpha": pt.alpha,
            "witness_p": pt.witness.p,
            "witness_q": pt.witness.q,
            "residual": pt.residual,
        }
        for pt in curve.points
    ]


def _cmd_smarandache(args) -> int:
    limit = _pair_limit(args)
    rows = _curve_rows([1.0], limit, _plan(args))
    _emit(args, "smarandache", limit, None, None, CURVE_COLUMNS, rows)
    return 0


def _cmd_alpha_curve(args) -> int:
    limit = _pair_limit(args)
    try:
        rows = _curve_rows(args.c, limit, _plan(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, "alpha-curve", limit, None, None, CURVE_COLUMNS, rows)
    return 0


def _cmd_gapstats(args) -> int:
    limit = _pair_limit(args)
    plan = _plan(args)
    if args.kind == "all":
        kinds = ["cramer", "bhp"] + (["conj1"] if args.alpha is not None else [])
    else:
        kinds = [args.kind]
    if "conj1" in kinds:
        if args.alpha is None:
            raise UsageError("--kind conj1 needs --alpha")
        if not 0.0 <= args.alpha < 1.0:
            raise UsageError(f"--alpha must lie in [0, 1), got {args.alpha}")
    rows = []
    for kind in kinds:
        alpha = args.alpha if kind == "conj1" else None
        for rec in scan_ratio_records(limit, kind, alpha, plan):
            rows.append(
                {
                    "kind": rec.kind,
                    "n": rec.n,
                    "p": rec.p,
                    "q": rec.q,
                    "gap": rec.g,
                    "ratio": rec.ratio,
                }
            )
    meta_alpha = args.alpha if "conj1" in kinds else None
    _emit(args, "gapstats", limit, meta_alpha, None, GAPSTATS_COLUMNS, rows)
    return 0


def _add_common(sub: argparse.ArgumentParser, *, checkpointable: bool = False) -> None:
    sub.add_argument("--limit", type=parse_limit, required=True, help="exclusive bound on q, the larger pair member ('4.26e8' and '100_000_000' both work)")
    sub.add_argument("--segment-span", type=parse_limit, default=None, help="sieve window width (default 2^20)")
    sub.add_argument("--threads", type=_positive_int, default=None, help=f"sieve worker threads (default ${THREADS_ENV} or 1)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv", help="output format (default csv)")
    if checkpointable:
        sub.add_argument("--checkpoint", metavar="PATH", default=None, help="write resumable progress to this file")
        sub.add_argument("--resume", action="store_true", help="continue from the checkpoint file instead of starting over")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primegaps",
        description="Prime-gap analyses: exact Andrica verification, power-difference records, minimal-exponent solving, and gap-growth statistics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("andrica", help="verify sqrt(q) - sqrt(p) < 1 for every pair below the limit")
    _add_common(p, checkpointable=True)
    p.set_defaults(handler=_cmd_andrica)

    p = sub.add_parser("records", help="running records of p^beta * (q^alpha - p^alpha)")
    _add_common(p, checkpointable=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--kind", choices=("min", "max"), default="min", help="track minima (default) or maxima")
    p.set_defaults(handler=_cmd_records)

    p = sub.add_parser("smarandache", help="minimal gamma with q^gamma - p^gamma = 1 over pairs below the limit")
    _add_common(p)
    p.set_defaults(handler=_cmd_smarandache)

    p = sub.add_parser("alpha-curve", help="minimal gamma per C over a grid of C values")
    _add_common(p)
    p.add_argument("--c", type=_c_list, required=True, metavar="C1,C2,...", help="comma-separated positive C values")
    p.set_defaults(handler=_cmd_alpha_curve)

    p = sub.add_parser("gapstats", help="running maxima of normalized gap ratios")
    _add_common(p)
    p.add_argument("--kind", choices=("cramer", "bhp", "conj1", "all"), default="all", help="which ratio to track (default: all available)")
    p.add_argument("--alpha", type=float, default=None, help="exponent for the conj1 ratio")
    p.set_defaults(handler=_cmd_gapstats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    if args.segment_span is None:
        args.segment_span = SievePlan().segment_span
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CheckpointError as exc:
        print(f"checkpoint error: {exc}", file=sys.stderr)
        return 2
    except SolverRangeError as exc:
        print(f"solver range error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
