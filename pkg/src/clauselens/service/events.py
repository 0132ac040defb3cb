"""Interaction telemetry: append-only per-session event logs.

Every viewport scroll and feature interaction lands here as one NDJSON
line, appended durably before the ack. Replaying a session log must
reconstruct the per-feature counts computed online.
"""

from __future__ import annotations

import json
import os
import re
import threading
from collections import Counter
from pathlib import Path

from ..errors import SchemaError, SequenceError

EVENT_KINDS: dict[str, dict[str, type | tuple]] = {
    "scroll": {"policy_id": str, "panel": str, "offset": (int, float)},
    "click_summary_snippet": {"policy_id": str, "snippet_id": str},
    "click_highlight_bar": {"policy_id": str, "snippet_id": str},
    "hover_power_meter": {"policy_id": str, "duration_ms": (int, float)},
    "open_definition": {"policy_id": str, "chunk_id": str, "phrase": str},
    "open_scenario": {"policy_id": str, "chunk_id": str, "phrase": str},
    "ask_question": {"policy_id": str, "chunk_id": str, "phrase": str},
    "navigate_policy": {"policy_id": str},
}

_SCROLL_PANELS = ("summary", "text")
_SESSION_ID_RE = re.compile(r"^[A-Za-z0-9_-]{1,80}$")


def validate_event(event: dict) -> None:
    """Schema check only; sequence rules are the log's job."""
    if not isinstance(event, dict):
        raise SchemaError("event must be an object")
    for key in ("session_id", "seq", "kind", "timestamp", "payload"):
        if key not in event:
            raise SchemaError(f"event missing key {key!r}")
    if not isinstance(event["session_id"], str) or \
            not _SESSION_ID_RE.match(event["session_id"]):
        raise SchemaError("invalid session_id")
    if not isinstance(event["seq"], int) or isinstance(event["seq"], bool) \
            or event["seq"] < 0:
        raise SchemaError("seq must be a non-negative integer")
    kind = event["kind"]
    if kind not in EVENT_KINDS:
        raise SchemaError(f"unknown event kind {kind!r}")
    payload = event["payload"]
    if not isinstance(payload, dict):
        raise SchemaError("payload must be an object")
    for field, types in EVENT_KINDS[kind].items():
        if field not in payload:
            raise SchemaError(f"{kind} payload missing {field!r}")
        if not isinstance(payload[field], types):
            raise SchemaError(f"{kind} payload field {field!r} has wrong type")
    if kind == "scroll" and payload["panel"] not in _SCROLL_PANELS:
        raise SchemaError(f"scroll panel must be one of {_SCROLL_PANELS}")


class EventLog:
    """Newline-delimited JSON, one file per session, append-only."""

    def __init__(self, events_dir: str | Path):
        self.root = Path(events_dir)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._last_seq: dict[str, int] = {}
        self._master = threading.Lock()

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._master:
            lock = self._locks.get(session_id)
            if lock is None:
                lock = self._locks[session_id] = threading.Lock()
            return lock

    def _path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.ndjson"

    def _tail_seq(self, session_id: str) -> int | None:
        if session_id in self._last_seq:
            return self._last_seq[session_id]
        path = self._path(session_id)
        if not path.is_file():
            return None
        last = None
        with path.open("r", encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    last = json.loads(line)["seq"]
        if last is not None:
            self._last_seq[session_id] = last
        return last

    def append(self, event: dict) -> None:
        """Validate, enforce strictly-increasing seq, append durably."""
        validate_event(event)
        session_id = event["session_id"]
        with self._lock_for(session_id):
            tail = self._tail_seq(session_id)
            if tail is not None and event["seq"] <= tail:
                raise SequenceError(
                    f"seq {event['seq']} not greater than last {tail} "
                    f"for session {session_id}")
            with self._path(session_id).open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(event, sort_keys=True,
                                    separators=(",", ":")) + "\n")
                fh.flush()
                os.fsync(fh.fileno())
            self._last_seq[session_id] = event["seq"]

    def append_batch(self, events: list[dict]) -> int:
        """All-or-nothing batch: every event is validated (schema and
        sequence, including intra-batch order) before anything is
        written. Returns the accepted count."""
        if not events:
            return 0
        for event in events:
            validate_event(event)
        by_session: dict[str, list[dict]] = {}
        for event in events:
            by_session.setdefault(event["session_id"], []).append(event)
        for session_id, batch in by_session.items():
            with self._lock_for(session_id):
                tail = self._tail_seq(session_id)
                for event in batch:
                    if tail is not None and event["seq"] <= tail:
                        raise SequenceError(
                            f"seq {event['seq']} not greater than "
                            f"{tail} for session {session_id}")
                    tail = event["seq"]
        for event in events:
            self.append(event)
        return len(events)

    def read_session(self, session_id: str) -> list[dict]:
        path = self._path(session_id)
        if not path.is_file():
            return []
        return [json.loads(line)
                for line in path.read_text("utf-8").splitlines()
                if line.strip()]

    def feature_counts(self, session_id: str) -> dict[str, int]:
        """Per-feature usage counts for one session's raw log."""
        counts: Counter = Counter(
            e["kind"] for e in self.read_session(session_id))
        return dict(counts)

    def session_ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.ndjson"))
