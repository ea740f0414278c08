"""Durable storage: an append-only event journal plus state snapshots.

Every state change is an event appended to ``journal.jsonl`` before the
HTTP response goes out.  Snapshots (``snapshot.json``) are written every
``snapshot_every`` events so recovery replays only the tail.  Events are
self-contained (they carry their timestamps and any computed mappings),
so replay never re-runs the NLP pipeline or talks to an embedding
provider.
"""

from __future__ import annotations

import json
import os
from typing import Optional

JOURNAL_FILE = "journal.jsonl"
SNAPSHOT_FILE = "snapshot.json"


class Journal:
    def __init__(self, data_dir: str):
        self.data_dir = data_dir
        os.makedirs(data_dir, exist_ok=True)
        self.journal_path = os.path.join(data_dir, JOURNAL_FILE)
        self.snapshot_path = os.path.join(data_dir, SNAPSHOT_FILE)
        self._next_seq = 1
        self._fh = None

    # -- recovery ------------------------------------------------------

    def load(self) -> tuple[Optional[dict], list[dict]]:
        """Snapshot state (or None) and the journal events recorded after it."""
        state = None
        snapshot_seq = 0
        if os.path.exists(self.snapshot_path):
            with open(self.snapshot_path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
            state = data["state"]
            snapshot_seq = data["seq"]

        events: list[dict] = []
        last_seq = snapshot_seq
        if os.path.exists(self.journal_path):
            with open(self.journal_path, "r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    entry = json.loads(line)
                    last_seq = max(last_seq, entry["seq"])
                    if entry["seq"] > snapshot_seq:
                        events.append(entry["event"])
        self._next_seq = last_seq + 1
        return state, events

    # -- writing -------------------------------------------------------

    def append(self, event: dict) -> int:
        if self._fh is None:
            self._fh = open(self.journal_path, "a", encoding="utf-8")
        seq = self._next_seq
        self._next_seq += 1
        self._fh.write(json.dumps({"seq": seq, "event": event}, sort_keys=True) + "\n")
        self._fh.flush()
        os.fsync(self._fh.fileno())
        return seq

    def write_snapshot(self, state: dict) -> None:
        payload = {"seq": self._next_seq - 1, "state": state}
        tmp = self.snapshot_path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, self.snapshot_path)

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None
