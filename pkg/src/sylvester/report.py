"""Deterministic JSON output, atomic writes, whitelists and run aggregation."""

from __future__ import annotations

import fnmatch
import json
import os
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .records import PASSING, STATUSES, RelationRecord

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INTERNAL = 2
EXIT_USAGE = 64
EXIT_IO = 74


def dumps(obj) -> str:
    """Compact JSON with insertion-ordered keys and a trailing newline."""
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True) + "\n"


def write_atomic(path, text: str) -> None:
    """Write via a temp file in the target directory, then rename over the target."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.chmod(tmp, 0o666 & ~_umask())
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def _umask() -> int:
    mask = os.umask(0)
    os.umask(mask)
    return mask


class WhitelistError(ValueError):
    pass


@dataclass(frozen=True)
class Whitelist:
    """Record ids whose non-passing status is expected.

    An entry matches its exact id first; otherwise it is tried as an fnmatch
    pattern. Ids contain brackets, so use [[] to match a literal one in a pattern.
    """

    patterns: tuple[str, ...] = ()

    @classmethod
    def load(cls, path) -> Whitelist:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise WhitelistError(f"cannot read whitelist {path}: {exc}") from exc
        if isinstance(data, dict):
            data = data.get("expected")
        if not isinstance(data, list) or not all(isinstance(p, str) for p in data):
            raise WhitelistError("whitelist must be a list of ids or {\"expected\": [ids]}")
        return cls(tuple(data))

    def covers(self, record_id: str) -> bool:
        if record_id in self.patterns:
            return True
        return any(fnmatch.fnmatchcase(record_id, p) for p in self.patterns)


@dataclass
class RunResult:
    """Everything one verification run produces; serializes to a report object."""

    mode: str
    n: int
    name: str
    records: list[RelationRecord] = field(default_factory=list)
    sections: dict = field(default_factory=dict)
    internal_errors: list[str] = field(default_factory=list)

    def sorted_records(self) -> list[RelationRecord]:
        return sorted(self.records, key=lambda r: r.id)

    def classify(self, wl: Whitelist) -> tuple[list[RelationRecord], list[RelationRecord]]:
        """(unexpected failures, whitelisted failures)."""
        bad = [r for r in self.sorted_records() if r.status not in PASSING]
        return [r for r in bad if not wl.covers(r.id)], [r for r in bad if wl.covers(r.id)]

    def exit_code(self, wl: Whitelist) -> int:
        if self.internal_errors:
            return EXIT_INTERNAL
        unexpected, _ = self.classify(wl)
        return EXIT_MISMATCH if unexpected else EXIT_OK

    def status_counts(self) -> dict[str, int]:
        c = Counter(r.status for r in self.records)
        return {s: c.get(s, 0) for s in STATUSES}

    def to_json(self, wl: Whitelist, full: bool = False) -> dict:
        unexpected, expected = self.classify(wl)
        return {
            "mode": self.mode,
            "n": self.n,
            "algebra": self.name,
            "summary": {
                "total": len(self.records),
                "by_status": self.status_counts(),
                "unexpected": [r.id for r in unexpected],
                "whitelisted": [r.id for r in expected],
                "internal_errors": list(self.internal_errors),
                "exit_code": self.exit_code(wl),
            },
            **self.sections,
            "records": [r.to_json(full) for r in self.sorted_records()],
        }


def combined_report(runs: Iterable[RunResult], wl: Whitelist, full: bool = False) -> dict:
    runs = list(runs)
    totals: Counter = Counter()
    for r in runs:
        totals.update(r.status_counts())
    return {
        "runs": [r.to_json(wl, full) for r in runs],
        "summary": {
            "runs": len(runs),
            "total": sum(len(r.records) for r in runs),
            "by_status": {s: totals.get(s, 0) for s in STATUSES},
            "exit_code": worst_exit(r.exit_code(wl) for r in runs),
        },
    }


def worst_exit(codes: Iterable[int]) -> int:
    """Internal failure beats mismatch beats success."""
    rank = {EXIT_OK: 0, EXIT_MISMATCH: 1, EXIT_INTERNAL: 2, EXIT_IO: 3, EXIT_USAGE: 4}
    worst = EXIT_OK
    for c in codes:
        if rank.get(c, 4) > rank[worst]:
            worst = c
    return worst


def summary_line(label: str, counts: dict[str, int], extra: Optional[str] = None) -> str:
    parts = ", ".join(f"{s}={counts.get(s, 0)}" for s in STATUSES)
    line = f"{label}: {sum(counts.values())} records ({parts})"
    return f"{line}; {extra}" if extra else line
