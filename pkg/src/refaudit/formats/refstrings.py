"""Human-readable reference-string parsing and rendering.

Recognized grammars, tried in this order against the tail of the entry:

  1. ``Journal V(1):L``      issue-colon shape (issue in parens)
  2. ``Journal V:L``         issue-colon shape, no issue
  3. ``Journal V, A-B (Y)``  page range (en/em dash or hyphen)
  4. ``Journal V, X (Y)``    article number

Anything else degrades to Unknown with best-effort fields — an audit run
must never abort because one bibliography entry is odd. The entry may be
a full reference ("18. Author A, Author B (2022) Title. Nat Commun
13(1):8"); only the trailing journal/volume/locator segment is parsed and
the journal hint is trimmed to the text after the last sentence break.
"""

from __future__ import annotations

import re
from typing import Optional

from refaudit.errors import EmptyReference
from refaudit.records import LocatorKind, ParsedReference

_DASHES = "–—-"  # en dash, em dash, hyphen

_ISSUE_COLON_RE = re.compile(
    r"(?P<journal>[^,;:()]*?)\s+(?P<volume>\d+)\s*"
    r"(?:\((?P<issue>\d+)\))?\s*:\s*(?P<locator>\d+)\s*\.?\s*$"
)
_PAGE_RANGE_RE = re.compile(
    r"(?P<journal>.*?)\s+(?P<volume>\d+)\s*,\s*"
    rf"(?P<first>\d+)\s*[{_DASHES}]\s*(?P<last>\d+)\s*"
    r"\((?P<year>\d{4})\)\s*\.?\s*$"
)
_ARTICLE_NUMBER_RE = re.compile(
    r"(?P<journal>.*?)\s+(?P<volume>\d+)\s*,\s*(?P<locator>\d+)\s*"
    r"\((?P<year>\d{4})\)\s*\.?\s*$"
)
_YEAR_RE = re.compile(r"\((\d{4})\)")
_LEADING_INDEX_RE = re.compile(r"^\s*\d{1,3}\.\s+")


def parse_reference_string(text: str) -> ParsedReference:
    """Decompose one bibliography entry. Raises EmptyReference on blank input."""
    if not text or not text.strip():
        raise EmptyReference("reference line is empty")
    raw = text.strip()
    entry = _LEADING_INDEX_RE.sub("", raw)

    m = _ISSUE_COLON_RE.search(entry)
    if m:
        return ParsedReference(
            raw=raw,
            journal_hint=_journal_tail(m.group("journal")),
            volume=m.group("volume"),
            issue=m.group("issue"),
            locator=m.group("locator"),
            locator_kind=LocatorKind.ISSUE_COLON_LOCATOR,
            year=_find_year(entry),
        )

    m = _PAGE_RANGE_RE.search(entry)
    if m:
        first, last = m.group("first"), m.group("last")
        if int(last) >= int(first):
            return ParsedReference(
                raw=raw,
                journal_hint=_journal_tail(m.group("journal")),
                volume=m.group("volume"),
                locator=f"{first}-{last}",  # separator normalized to hyphen
                locator_kind=LocatorKind.PAGE_RANGE,
                year=int(m.group("year")),
            )

    m = _ARTICLE_NUMBER_RE.search(entry)
    if m:
        return ParsedReference(
            raw=raw,
            journal_hint=_journal_tail(m.group("journal")),
            volume=m.group("volume"),
            locator=m.group("locator"),
            locator_kind=LocatorKind.ARTICLE_NUMBER,
            year=int(m.group("year")),
        )

    # Unknown grammar: salvage what we can, never error.
    volume_match = re.search(r"\b(\d+)\b", entry)
    return ParsedReference(
        raw=raw,
        journal_hint=_journal_tail(entry),
        volume=volume_match.group(1) if volume_match else None,
        locator_kind=LocatorKind.UNKNOWN,
        year=_find_year(entry),
    )


def render_reference(
    kind: LocatorKind,
    journal: str,
    volume: str,
    locator: str,
    issue: Optional[str] = None,
    year: Optional[int] = None,
) -> str:
    """Render components back into one of the three recognized grammars."""
    if kind is LocatorKind.ISSUE_COLON_LOCATOR:
        if issue:
            return f"{journal} {volume}({issue}):{locator}"
        return f"{journal} {volume}:{locator}"
    if kind is LocatorKind.PAGE_RANGE:
        first, _, last = locator.partition("-")
        return f"{journal} {volume}, {first}–{last} ({year})"
    if kind is LocatorKind.ARTICLE_NUMBER:
        return f"{journal} {volume}, {locator} ({year})"
    raise ValueError(f"cannot render locator kind {kind}")


def _journal_tail(prefix: str) -> str:
    """Trim a greedy prefix down to the journal-name segment.

    Reference entries put the journal right before volume/locator, after
    the title's closing period, so keep only what follows the last ". ".
    """
    tail = prefix.strip().rstrip(",;")
    if ". " in tail:
        tail = tail.rsplit(". ", 1)[1]
    return tail.strip()


def _find_year(entry: str) -> Optional[int]:
    matches = _YEAR_RE.findall(entry)
    return int(matches[-1]) if matches else None
