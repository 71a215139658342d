"""Journal registry: name/alias -> ISSN resolution.

Ships a default registry of affected online-only journals; users extend
or override it with their own JSON file of the same shape (a complete
list of affected journals does not exist, so extensibility is the point).
Lookup is case- and punctuation-insensitive and accepts the common
ISO-4 style abbreviations as aliases.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional


@dataclass
class JournalEntry:
    name: str
    issn: Optional[str] = None
    aliases: list[str] = field(default_factory=list)


def _norm(name: str) -> str:
    return " ".join(re.findall(r"[a-z0-9]+", name.lower()))


class JournalRegistry:
    def __init__(self, entries: list[JournalEntry]):
        self.entries = entries
        self._index: dict[str, JournalEntry] = {}
        for entry in entries:
            self._index[_norm(entry.name)] = entry
            for alias in entry.aliases:
                self._index.setdefault(_norm(alias), entry)

    def resolve(self, name_or_alias: str) -> Optional[JournalEntry]:
        return self._index.get(_norm(name_or_alias))

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def from_dict(cls, data: dict) -> "JournalRegistry":
        entries = [
            JournalEntry(
                name=j["name"],
                issn=j.get("issn"),
                aliases=list(j.get("aliases", [])),
            )
            for j in data.get("journals", [])
        ]
        return cls(entries)

    @classmethod
    def from_file(cls, path: str | Path) -> "JournalRegistry":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def extended_with(self, other: "JournalRegistry") -> "JournalRegistry":
        """New registry with *other*'s entries taking precedence."""
        merged: dict[str, JournalEntry] = {_norm(e.name): e for e in self.entries}
        for entry in other.entries:
            merged[_norm(entry.name)] = entry
        return JournalRegistry(list(merged.values()))


def default_registry() -> JournalRegistry:
    data = resources.files("refaudit.data").joinpath("journals.json").read_text("utf-8")
    return JournalRegistry.from_dict(json.loads(data))
