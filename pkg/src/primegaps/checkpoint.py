"""Resumable run state persisted as a single JSON document.

A checkpoint captures everything a long verification or record scan needs
to continue after an interruption: the bound fully processed so far, the
stream cursor (next pair index and the last prime emitted), accumulated
records or violations, and the best-so-far witness.  Writes are atomic
(temp file in the target directory, then rename) so a crash can never
leave a half-written file, and the serialization is canonical (sorted
keys, fixed indentation, trailing newline) so write -> read -> write is
byte-identical.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .functional import RecordEvent
from .sieve import ConsecutivePair

__all__ = [
    "SCHEMA_VERSION",
    "Checkpoint",
    "CheckpointError",
    "load_checkpoint",
    "save_checkpoint",
    "pair_to_dict",
    "pair_from_dict",
    "event_to_dict",
    "event_from_dict",
]

SCHEMA_VERSION = 1

_REQUIRED_KEYS = frozenset(
    {
        "schema_version",
        "command",
        "params",
        "verified_below",
        "cursor_n",
        "cursor_prime",
        "max_witness",
        "max_value",
        "records_so_far",
        "violations",
        "created_at",
    }
)


class CheckpointError(Exception):
    """A checkpoint file is missing, corrupt, or belongs to a different run."""


def pair_to_dict(pr: ConsecutivePair) -> dict:
    return {"n": pr.n, "p": pr.p, "q": pr.q, "gap": pr.g}


def pair_from_dict(d: dict) -> ConsecutivePair:
    try:
        return ConsecutivePair(d["n"], d["p"], d["q"], d["gap"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CheckpointError(f"malformed pair entry {d!r}: {exc}") from exc


def event_to_dict(ev: RecordEvent) -> dict:
    return {"n": ev.n, "p": ev.p, "q": ev.q, "gap": ev.g, "value": ev.value, "kind": ev.kind}


def event_from_dict(d: dict) -> RecordEvent:
    try:
        return RecordEvent(d["n"], d["p"], d["q"], d["gap"], d["value"], d["kind"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CheckpointError(f"malformed record entry {d!r}: {exc}") from exc


@dataclass
class Checkpoint:
    """Snapshot of an interruptible scan.

    ``verified_below`` is the exclusive bound below which every pair has
    been processed; ``(cursor_n, cursor_prime)`` is the resume cursor (the
    next pair's index and its smaller member, which the producing run has
    already sieved).  ``params`` holds the analysis parameters that must
    match for a resume to be legal; the target limit is deliberately not
    among them, so a finished short run can be extended to a larger bound.
    """

    command: str
    verified_below: int
    cursor_n: int
    cursor_prime: int
    params: dict = field(default_factory=dict)
    max_witness: dict | None = None
    max_value: float | None = None
    records_so_far: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    created_at: str = ""
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self) -> None:
        if not self.created_at:
            now = datetime.now(timezone.utc)
            self.created_at = now.isoformat(timespec="seconds")

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "params": self.params,
            "verified_below": self.verified_below,
            "cursor_n": self.cursor_n,
            "cursor_prime": self.cursor_prime,
            "max_witness": self.max_witness,
            "max_value": self.max_value,
            "records_so_far": self.records_so_far,
            "violations": self.violations,
            "created_at": self.created_at,
        }

    def require_compatible(self, command: str, params: dict, limit: int) -> None:
        """Reject resumption under a different analysis or a smaller bound."""
        if self.command != command:
            raise CheckpointError(
                f"checkpoint was written by the {self.command!r} command, not {command!r}"
            )
        if self.params != params:
            raise CheckpointError(
                f"checkpoint parameters {self.params!r} do not match the requested {params!r}"
            )
        if limit < self.verified_below:
            raise CheckpointError(
                f"checkpoint already covers numbers below {self.verified_below}; "
                f"requested limit {limit} would shrink coverage"
            )


def _require_key(doc: dict, key: str, kinds, what: str):
    value = doc[key]
    if not isinstance(value, kinds) or isinstance(value, bool):
        raise CheckpointError(f"checkpoint field {key!r} must be {what}, got {value!r}")
    return value


def _validate(doc: dict) -> Checkpoint:
    if not isinstance(doc, dict):
        raise CheckpointError(f"checkpoint must be a JSON object, got {type(doc).__name__}")
    keys = set(doc)
    if keys != _REQUIRED_KEYS:
        missing = sorted(_REQUIRED_KEYS - keys)
        extra = sorted(keys - _REQUIRED_KEYS)
        raise CheckpointError(f"checkpoint fields wrong: missing {missing}, unexpected {extra}")
    version = _require_key(doc, "schema_version", int, "an integer")
    if version != SCHEMA_VERSION:
        raise CheckpointError(
            f"checkpoint schema version {version} is not supported (expected {SCHEMA_VERSION})"
        )
    command = _require_key(doc, "command", str, "a string")
    params = _require_key(doc, "params", dict, "an object")
    verified_below = _require_key(doc, "verified_below", int, "an integer")
    cursor_n = _require_key(doc, "cursor_n", int, "an integer")
    cursor_prime = _require_key(doc, "cursor_prime", int, "an integer")
    created_at = _require_key(doc, "created_at", str, "a string")
    if verified_below < 2 or cursor_n < 1 or cursor_prime < 2:
        raise CheckpointError(
            f"checkpoint cursor out of range: verified_below={verified_below}, "
            f"cursor_n={cursor_n}, cursor_prime={cursor_prime}"
        )
    max_witness = doc["max_witness"]
    if max_witness is not None:
        pair_from_dict(max_witness if isinstance(max_witness, dict) else {})
    max_value = doc["max_value"]
    if max_value is not None and not isinstance(max_value, (int, float)):
        raise CheckpointError(f"checkpoint field 'max_value' must be a number, got {max_value!r}")
    records = _require_key(doc, "records_so_far", list, "a list")
    violations = _require_key(doc, "violations", list, "a list")
    for entry in records:
        ev = event_from_dict(entry if isinstance(entry, dict) else {})
        if ev.q > verified_below:
            raise CheckpointError(
                f"record at q={ev.q} lies beyond verified_below={verified_below}"
            )
    for entry in violations:
        pr = pair_from_dict(entry if isinstance(entry, dict) else {})
        if pr.q > verified_below:
            raise CheckpointError(
                f"violation at q={pr.q} lies beyond verified_below={verified_below}"
            )
    return Checkpoint(
        command=command,
        verified_below=verified_below,
        cursor_n=cursor_n,
        cursor_prime=cursor_prime,
        params=params,
        max_witness=max_witness,
        max_value=max_value,
        records_so_far=records,
        violations=violations,
        created_at=created_at,
        schema_version=version,
    )


def load_checkpoint(path: str | os.PathLike) -> Checkpoint:
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CheckpointError(f"checkpoint {path} is not valid JSON: {exc}") from exc
    return _validate(doc)


def save_checkpoint(path: str | os.PathLike, cp: Checkpoint) -> None:
    """Write atomically: the file is either the old version or the new one."""
    text = json.dumps(cp.to_dict(), sort_keys=True, indent=2) + "\n"
    target = os.path.abspath(os.fspath(path))
    directory = os.path.dirname(target)
    fd, tmp = tempfile.mkstemp(prefix=".checkpoint-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
