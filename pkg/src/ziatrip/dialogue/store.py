"""Append-only per-session event logs (JSON lines), rebuildable state."""

from __future__ import annotations

import json
import logging
import threading
from pathlib import Path

logger = logging.getLogger(__name__)


class SessionStore:
    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._locks: dict = {}
        self._guard = threading.Lock()

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def _path(self, session_id: str) -> Path:
        return self.directory / f"{session_id}.jsonl"

    def append_event(self, session_id: str, event: dict) -> None:
        line = json.dumps(event, ensure_ascii=False, sort_keys=True)
        with self._lock_for(session_id):
            with open(self._path(session_id), "a", encoding="utf-8") as fh:
                fh.write(line + "\n")

    def read_events(self, session_id: str) -> list:
        path = self._path(session_id)
        if not path.exists():
            return []
        events = []
        with open(path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    events.append(json.loads(line))
                except json.JSONDecodeError:
                    logger.warning("skipping corrupt event %s:%d", path.name, line_no)
        return events

    def session_ids(self) -> list:
        return sorted(p.stem for p in self.directory.glob("*.jsonl"))

    def exists(self, session_id: str) -> bool:
        return self._path(session_id).exists()
