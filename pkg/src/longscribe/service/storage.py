"""Embedded document store with a write-ahead journal.

Documents live in memory and every mutation is appended to a JSON-lines
journal before it is applied, so a restart replays the journal back into
the same state. Media uploads are kept as plain blob files next to the
journal. One lock serialises writers; reads return copies.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Any


class StorageFailure(RuntimeError):
    """The store could not persist or recover data."""


class DocumentStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        try:
            self.root.mkdir(parents=True, exist_ok=True)
            (self.root / "blobs").mkdir(exist_ok=True)
        except OSError as exc:
            raise StorageFailure(f"cannot initialise storage at {self.root}: {exc}") from exc
        self._journal_path = self.root / "journal.jsonl"
        self._docs: dict[tuple[str, str], dict[str, Any]] = {}
        self._lock = threading.RLock()
        self._replay()
        self._journal = open(self._journal_path, "a", encoding="utf-8")

    def _replay(self) -> None:
        if not self._journal_path.exists():
            return
        with open(self._journal_path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    entry = json.loads(line)
                except json.JSONDecodeError:
                    continue  # torn tail write; ignore the partial record
                key = (entry["collection"], entry["key"])
                if entry["op"] == "put":
                    self._docs[key] = entry["doc"]
                elif entry["op"] == "delete":
                    self._docs.pop(key, None)

    def put(self, collection: str, key: str, doc: dict[str, Any]) -> None:
        entry = {"op": "put", "collection": collection, "key": key, "doc": doc}
        with self._lock:
            try:
                self._journal.write(json.dumps(entry, ensure_ascii=False) + "\n")
                self._journal.flush()
            except OSError as exc:
                raise StorageFailure(f"journal write failed: {exc}") from exc
            self._docs[(collection, key)] = json.loads(json.dumps(doc))

    def get(self, collection: str, key: str) -> dict[str, Any] | None:
        with self._lock:
            doc = self._docs.get((collection, key))
            return json.loads(json.dumps(doc)) if doc is not None else None

    def keys(self, collection: str) -> list[str]:
        with self._lock:
            return sorted(k for c, k in self._docs if c == collection)

    def put_blob(self, name: str, data: bytes) -> Path:
        path = self.root / "blobs" / name
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(data)
        except OSError as exc:
            raise StorageFailure(f"blob write failed: {exc}") from exc
        return path

    def get_blob(self, name: str) -> bytes:
        path = self.root / "blobs" / name
        if not path.exists():
            raise StorageFailure(f"missing blob {name}")
        return path.read_bytes()

    def close(self) -> None:
        with self._lock:
            self._journal.close()
