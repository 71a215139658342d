"""RIS export parser.

RIS tag reference used here:
  TY        — record type (starts a record)
  TI / T1   — title
  AU        — author (one tag per author)
  JO/JF/T2  — journal name (first one present wins, in that order)
  VL / IS   — volume / issue
  SP / EP   — start page / end page
  PY / DA   — year / full date (DA wins for month/day detail)
  DO        — DOI
  SN        — ISSN
  ER        — end of record (required)

Unknown tags are ignored. Values are kept verbatim.

Article-number candidacy: online-only exports ship the article number in
SP with no EP and issue 1, so SP is surfaced as an ``article_number``
candidate only when EP is absent, the issue is absent or "1", and SP is
numeric. Paged articles (SP+EP) never get a candidate. Candidate status
stays recoverable from the record itself (source_format RIS, no end_page).
"""

from __future__ import annotations

import re
from typing import Optional

from refaudit.errors import MalformedRIS, MissingDOI
from refaudit.records import ArticleRecord, PubDate, SourceFormat

# "XX  - value": two-letter tag, 1-2 spaces, dash, optional space.
_TAG_RE = re.compile(r"^([A-Z][A-Z0-9])\s{1,2}-\s?(.*)$")

_JOURNAL_TAGS = ("JO", "JF", "T2")
_TITLE_TAGS = ("TI", "T1")


def parse_ris(text: str) -> ArticleRecord:
    """Parse one RIS record into a normalized ArticleRecord.

    Raises MalformedRIS when there is no ER terminator (or no tags at
    all), MissingDOI when the DO tag is absent.
    """
    fields: dict[str, list[str]] = {}
    saw_er = False
    saw_any_tag = False

    for line in text.splitlines():
        m = _TAG_RE.match(line.rstrip())
        if not m:
            continue
        tag, value = m.group(1), m.group(2).strip()
        saw_any_tag = True
        if tag == "ER":
            saw_er = True
            break
        fields.setdefault(tag, []).append(value)

    if not saw_any_tag:
        raise MalformedRIS("no RIS tags found in input")
    if not saw_er:
        raise MalformedRIS("record has no ER terminator")

    doi = _first(fields, "DO")
    if not doi:
        raise MissingDOI("RIS record has no DO tag")

    volume = _first(fields, "VL")
    issue = _first(fields, "IS")
    start_page = _first(fields, "SP")
    end_page = _first(fields, "EP")

    article_number = None
    if (
        start_page is not None
        and end_page is None
        and issue in (None, "1")
        and start_page.isdigit()
    ):
        article_number = start_page

    journal = ""
    for tag in _JOURNAL_TAGS:
        if _first(fields, tag):
            journal = _first(fields, tag)  # type: ignore[assignment]
            break
    title = ""
    for tag in _TITLE_TAGS:
        if _first(fields, tag):
            title = _first(fields, tag)  # type: ignore[assignment]
            break

    return ArticleRecord(
        doi=doi,
        journal_title=journal,
        issn=_first(fields, "SN"),
        volume=volume,
        issue=issue,
        article_number=article_number,
        start_page=start_page,
        end_page=end_page,
        publication_date=_parse_date(_first(fields, "PY"), _first(fields, "DA")),
        title=title,
        authors=fields.get("AU", []),
        source_format=SourceFormat.RIS,
    )


def _first(fields: dict[str, list[str]], tag: str) -> Optional[str]:
    values = fields.get(tag)
    return values[0] if values else None


def _parse_date(py: Optional[str], da: Optional[str]) -> Optional[PubDate]:
    # DA carries full dates ("2025/01/02" or ISO); PY often just the year.
    for raw in (da, py):
        if not raw:
            continue
        try:
            return PubDate.parse(raw)
        except ValueError:
            continue
    return None
