"""Append-only JSON-lines ledger of discovered codes."""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .search import DiscoveredCode

LEDGER_ENV = "CIRCCODES_LEDGER"
DEFAULT_LEDGER = "circcodes-ledger.jsonl"

# header keys depend on the family: "header", or "header_a" and "header_b"
REQUIRED_KEYS = (
    "family", "r", "n", "k",
    "d", "exact", "method", "witness", "work_units", "seed", "params",
    "lb", "ub", "verification", "timestamp", "master_seed",
    "tool_version", "command_line",
)  # fmt: skip


def default_ledger_path() -> Path:
    return Path(os.environ.get(LEDGER_ENV, DEFAULT_LEDGER))


@dataclass(frozen=True)
class LedgerRecord:
    code: DiscoveredCode
    command_line: tuple[str, ...]
    tool_version: str = __version__

    def to_dict(self) -> dict:
        d = self.code.to_dict()
        d["tool_version"] = self.tool_version
        d["command_line"] = list(self.command_line)
        return d


class Ledger:
    """Single writer; each record is one ``write`` of one line, flushed immediately."""

    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, record: LedgerRecord) -> dict:
        d = record.to_dict()
        line = json.dumps(d, sort_keys=True) + "\n"
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a") as fh:
                fh.write(line)
                fh.flush()
                os.fsync(fh.fileno())
        return d

    def read(self) -> list[dict]:
        if not self.path.exists():
            return []
        out = []
        with open(self.path) as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    out.append(json.loads(line))
                except json.JSONDecodeError as exc:
                    raise ValueError(f"{self.path}:{lineno}: {exc}") from None
        return out
