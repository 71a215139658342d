"""Crossref work-record parser.

Crossref returns a dedicated ``article-number`` field (for every publisher
that deposits one), which makes it the trustworthy side of cross-format
comparisons. The citation-relevant ``is-referenced-by-count`` is surfaced
to the caller next to the record so listing scans don't need a second
request per DOI.
"""

from __future__ import annotations

import json
from typing import Optional

from refaudit.errors import MalformedPayload, MissingDOI
from refaudit.records import ArticleRecord, PubDate, SourceFormat


def parse_crossref_work(text_or_obj) -> tuple[ArticleRecord, Optional[int]]:
    """Parse a Crossref work (raw JSON text, message envelope, or bare work).

    Returns ``(record, is_referenced_by_count)``; the count is None when
    Crossref did not include it.
    """
    if isinstance(text_or_obj, (str, bytes)):
        try:
            obj = json.loads(text_or_obj)
        except (TypeError, ValueError) as exc:
            raise MalformedPayload(f"not valid JSON: {exc}") from exc
    else:
        obj = text_or_obj
    if not isinstance(obj, dict):
        raise MalformedPayload("expected a JSON object")
    work = obj.get("message", obj)
    if not isinstance(work, dict):
        raise MalformedPayload("work message is not an object")

    doi = work.get("DOI") or work.get("doi")
    if not doi:
        raise MissingDOI("Crossref work has no DOI")

    start_page, end_page = _split_pages(work.get("page"))
    titles = work.get("title") or []
    containers = work.get("container-title") or []
    issns = work.get("ISSN") or []

    count = work.get("is-referenced-by-count")
    if count is not None and not isinstance(count, int):
        raise MalformedPayload(f"is-referenced-by-count is not an integer: {count!r}")

    record = ArticleRecord(
        doi=doi,
        journal_title=_first(containers),
        issn=_first(issns) or None,
        volume=_as_text(work.get("volume")),
        issue=_as_text(work.get("issue")),
        article_number=_as_text(work.get("article-number")),
        start_page=start_page,
        end_page=end_page,
        publication_date=_issued_date(work),
        title=_first(titles),
        authors=_authors(work.get("author")),
        source_format=SourceFormat.CROSSREF_WORK,
    )
    return record, count


def _first(values) -> str:
    if isinstance(values, list):
        return str(values[0]) if values else ""
    return str(values) if values else ""


def _as_text(value) -> Optional[str]:
    return str(value) if value is not None else None


def _split_pages(page) -> tuple[Optional[str], Optional[str]]:
    if not page:
        return None, None
    # Crossref uses "8888-8898"; tolerate en/em dashes too.
    for sep in ("-", "–", "—"):
        if sep in str(page):
            start, _, end = str(page).partition(sep)
            return start.strip() or None, end.strip() or None
    return str(page).strip(), None


def _issued_date(work: dict) -> Optional[PubDate]:
    for key in ("issued", "published", "published-online", "published-print", "created"):
        block = work.get(key)
        if not isinstance(block, dict):
            continue
        parts = block.get("date-parts")
        if not parts or not isinstance(parts[0], list) or not parts[0]:
            continue
        p = parts[0]
        try:
            return PubDate(
                int(p[0]),
                int(p[1]) if len(p) > 1 and p[1] else None,
                int(p[2]) if len(p) > 2 and p[2] else None,
            )
        except (TypeError, ValueError):
            continue
    return None


def _authors(raw) -> list[str]:
    if not isinstance(raw, list):
        return []
    names = []
    for a in raw:
        if not isinstance(a, dict):
            continue
        given, family = a.get("given", ""), a.get("family", "")
        full = f"{given} {family}".strip()
        if full:
            names.append(full)
    return names
