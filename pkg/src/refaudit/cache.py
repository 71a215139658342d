"""On-disk response cache: append-only JSONL journal per source.

Layout: one ``<source>.jsonl`` file per citation source in the cache
directory. Each line is ``{"key": [...], "value": ..., "stored_at": ts}``;
the latest line for a key wins. Appending keeps writes cheap and crash
damage localized to the trailing line; ``compact()`` rewrites a file with
only the live entries. Human-inspectable by design — raw API responses
are part of the audit trail.

Thread-safe; a single lock serializes loads, appends and compaction.
"""

from __future__ import annotations

import json
import os
import threading
import time
from pathlib import Path
from typing import Any, Optional

from refaudit.errors import StorageCorrupt


class JsonlCache:
    """Durable key/value store keyed by (identifier, source)."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        # source -> {key_json: (value, stored_at)}
        self._entries: dict[str, dict[str, tuple[Any, float]]] = {}
        self._live_counts: dict[str, int] = {}
        self._line_counts: dict[str, int] = {}
        self.skipped_lines = 0

    def _path(self, source: str) -> Path:
        safe = "".join(c if c.isalnum() or c in "-_" else "_" for c in source)
        return self.directory / f"{safe}.jsonl"

    def _load(self, source: str) -> dict[str, tuple[Any, float]]:
        if source in self._entries:
            return self._entries[source]
        entries: dict[str, tuple[Any, float]] = {}
        lines = 0
        path = self._path(source)
        if path.exists():
            try:
                text = path.read_text(encoding="utf-8")
            except (OSError, UnicodeDecodeError) as exc:
                raise StorageCorrupt(f"cannot read cache file {path}: {exc}") from exc
            for line in text.splitlines():
                if not line.strip():
                    continue
                lines += 1
                try:
                    obj = json.loads(line)
                    key = json.dumps(obj["key"], sort_keys=True)
                    entries[key] = (obj["value"], float(obj["stored_at"]))
                except (ValueError, KeyError, TypeError):
                    # A torn or garbled line loses one entry, not the store.
                    self.skipped_lines += 1
        self._entries[source] = entries
        self._live_counts[source] = len(entries)
        self._line_counts[source] = lines
        return entries

    def get(
        self, key: tuple[str, str], ttl_seconds: Optional[float] = None
    ) -> Optional[Any]:
        """Return the stored value, or None on miss or TTL expiry."""
        identifier, source = key
        with self._lock:
            entries = self._load(source)
            hit = entries.get(json.dumps([identifier, source], sort_keys=True))
            if hit is None:
                return None
            value, stored_at = hit
            if ttl_seconds is not None and time.time() - stored_at > ttl_seconds:
                return None
            return value

    def put(self, key: tuple[str, str], value: Any) -> Any:
        """Store (overwrite) a value; returns the stored value."""
        identifier, source = key
        stored_at = time.time()
        key_json = json.dumps([identifier, source], sort_keys=True)
        line = json.dumps(
            {"key": [identifier, source], "value": value, "stored_at": stored_at}
        )
        with self._lock:
            entries = self._load(source)
            entries[key_json] = (value, stored_at)
            with open(self._path(source), "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
            self._line_counts[source] = self._line_counts.get(source, 0) + 1
            self._live_counts[source] = len(entries)
            # Rewrite once dead lines dominate; keeps files bounded.
            if self._line_counts[source] > 64 and (
                self._line_counts[source] > 2 * self._live_counts[source]
            ):
                self._compact_locked(source)
        return value

    def compact(self, source: str) -> None:
        with self._lock:
            self._load(source)
            self._compact_locked(source)

    def _compact_locked(self, source: str) -> None:
        entries = self._entries.get(source, {})
        tmp = self._path(source).with_suffix(".jsonl.tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            for key_json, (value, stored_at) in entries.items():
                fh.write(
                    json.dumps(
                        {
                            "key": json.loads(key_json),
                            "value": value,
                            "stored_at": stored_at,
                        }
                    )
                    + "\n"
                )
        os.replace(tmp, self._path(source))
        self._line_counts[source] = len(entries)
