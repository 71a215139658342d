"""Publisher metadata-API JSON parser.

Field semantics of this API family, which drive the detectors downstream:
``number`` is the *issue* number (not the article number), ``startingPage``
and ``endingPage`` are the PDF page span. The article number has no field
and — for the affected journals — does not appear anywhere in the payload,
which is exactly what :func:`refaudit.rules.detect_i2` tests for. The
parser therefore never populates ``article_number`` from this format.

Along with the record, callers get a predicate over the raw text so they
can probe for the presence/absence of any needle (e.g. the true article
number) without re-reading the payload.
"""

from __future__ import annotations

import json
from typing import Callable

from refaudit.errors import MalformedPayload, MissingDOI
from refaudit.records import ArticleRecord, PubDate, SourceFormat


def parse_publisher_json(text: str) -> tuple[ArticleRecord, Callable[[str], bool]]:
    """Parse one record object (or a ``{"records": [...]}`` envelope).

    Returns ``(record, raw_contains)`` where ``raw_contains(needle)``
    reports whether the needle occurs anywhere in the raw payload text.
    """
    try:
        payload = json.loads(text)
    except (TypeError, ValueError) as exc:
        raise MalformedPayload(f"not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise MalformedPayload(f"expected a JSON object, got {type(payload).__name__}")

    obj = payload
    if "records" in payload:
        records = payload["records"]
        if not isinstance(records, list) or not records:
            raise MalformedPayload("'records' is not a non-empty list")
        obj = records[0]
        if not isinstance(obj, dict):
            raise MalformedPayload("record entry is not an object")

    doi = obj.get("doi") or obj.get("identifier", "").replace("doi:", "")
    if not doi:
        raise MissingDOI("publisher JSON record has no doi")

    start = _as_text(obj.get("startingPage"))
    end = _as_text(obj.get("endingPage"))
    page_count = None
    if start and end and start.isdigit() and end.isdigit():
        span = int(end) - int(start) + 1
        if span >= 1:
            page_count = span

    record = ArticleRecord(
        doi=doi,
        journal_title=obj.get("publicationName", "") or "",
        issn=obj.get("issn") or obj.get("eIssn"),
        volume=_as_text(obj.get("volume")),
        issue=_as_text(obj.get("number")),
        article_number=None,  # this format never carries it
        start_page=start,
        end_page=end,
        page_count=page_count,
        publication_date=_parse_date(obj.get("publicationDate")),
        title=obj.get("title", "") or "",
        authors=_creators(obj.get("creators")),
        source_format=SourceFormat.PUBLISHER_JSON,
    )

    def raw_contains(needle: str) -> bool:
        return needle in text

    return record, raw_contains


def _as_text(value) -> str | None:
    if value is None:
        return None
    return str(value)


def _parse_date(raw) -> PubDate | None:
    if not raw:
        return None
    try:
        return PubDate.parse(str(raw))
    except ValueError:
        return None


def _creators(raw) -> list[str]:
    # Both [{"creator": "Name"}] and plain ["Name"] occur in the wild.
    if not isinstance(raw, list):
        return []
    names = []
    for entry in raw:
        if isinstance(entry, dict) and entry.get("creator"):
            names.append(str(entry["creator"]))
        elif isinstance(entry, str) and entry:
            names.append(entry)
    return names
