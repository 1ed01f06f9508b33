"""Append-only per-session event logs.

Every state-changing request is appended (and flushed) before it is
executed, so a session can always be reconstructed by replaying its log
against the same artifacts. Events carry inputs, never responses: replay
recomputes responses through the identical code path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

EVENT_SESSION_CREATED = "session_created"
EVENT_ABSTRACT_SUBMITTED = "abstract_submitted"
EVENT_SENTENCE_SELECTED = "sentence_selected"
EVENT_CHAT_POSTED = "chat_posted"


@dataclass(frozen=True)
class Event:
    seq: int
    kind: str
    payload: dict
    timestamp: float


class EventLog:
    def __init__(self, path: Path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = self.path.open("a", encoding="utf-8")
        self._seq = sum(1 for _ in self.path.open(encoding="utf-8")) if self.path.exists() else 0

    def append(self, kind: str, payload: dict, timestamp: float) -> Event:
        event = Event(seq=self._seq, kind=kind, payload=payload, timestamp=timestamp)
        self._fh.write(
            json.dumps(
                {"seq": event.seq, "kind": kind, "payload": payload, "ts": timestamp},
                sort_keys=True,
            )
            + "\n"
        )
        self._fh.flush()
        self._seq += 1
        return event

    def close(self) -> None:
        self._fh.close()

    @property
    def size(self) -> int:
        return self._seq


def read_events(path: Path) -> list[Event]:
    events = []
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            events.append(
                Event(seq=obj["seq"], kind=obj["kind"], payload=obj["payload"], timestamp=obj["ts"])
            )
    return events
