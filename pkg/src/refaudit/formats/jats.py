"""JATS XML article-meta parser.

JATS is the one API format that does carry the article number: in the
``elocation-id`` element, or failing that in the ``seq`` attribute of the
``issue`` element, or (for some journals) in ``custom-meta`` name/value
pairs whose names vary — those names are supplied by the caller.

Namespaces are ignored: elements are matched by local name, since JATS
payloads appear both with and without a default namespace.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Iterable, Optional, Sequence

from refaudit.errors import MalformedPayload
from refaudit.records import ArticleRecord, PubDate, SourceFormat


def parse_jats(
    text: str, custom_meta_keys: Sequence[str] = ()
) -> ArticleRecord:
    """Parse JATS article metadata.

    ``custom_meta_keys``: extra custom-meta names to accept as article
    number carriers when elocation-id and issue/@seq are both absent.
    Empty by default since those names are publisher-specific.
    """
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise MalformedPayload(f"not well-formed XML: {exc}") from exc

    doi = None
    for el in _iter_local(root, "article-id"):
        if el.get("pub-id-type") == "doi" and el.text:
            doi = el.text.strip()
            break
    if doi is None:
        raise MalformedPayload("JATS metadata has no DOI article-id")

    issue_el = _first_local(root, "issue")
    issue = issue_el.text.strip() if issue_el is not None and issue_el.text else None

    article_number = None
    eloc = _first_local(root, "elocation-id")
    if eloc is not None and eloc.text and eloc.text.strip():
        article_number = eloc.text.strip()
    elif issue_el is not None and issue_el.get("seq"):
        article_number = issue_el.get("seq")
    elif custom_meta_keys:
        article_number = _from_custom_meta(root, custom_meta_keys)

    start_page = _text_of(_first_local(root, "fpage"))
    end_page = _text_of(_first_local(root, "lpage"))

    return ArticleRecord(
        doi=doi,
        journal_title=_text_of(_first_local(root, "journal-title")) or "",
        issn=_text_of(_first_local(root, "issn")),
        volume=_text_of(_first_local(root, "volume")),
        issue=issue,
        article_number=article_number,
        start_page=start_page,
        end_page=end_page if start_page else None,
        publication_date=_pub_date(root),
        title=_text_of(_first_local(root, "article-title")) or "",
        authors=_authors(root),
        source_format=SourceFormat.JATS,
    )


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _iter_local(root: ET.Element, name: str) -> Iterable[ET.Element]:
    for el in root.iter():
        if _local(el.tag) == name:
            yield el


def _first_local(root: ET.Element, name: str) -> Optional[ET.Element]:
    return next(iter(_iter_local(root, name)), None)


def _text_of(el: Optional[ET.Element]) -> Optional[str]:
    if el is None or el.text is None:
        return None
    stripped = el.text.strip()
    return stripped or None


def _pub_date(root: ET.Element) -> Optional[PubDate]:
    for el in _iter_local(root, "pub-date"):
        year = _text_of(_first_local(el, "year"))
        if not year or not year.isdigit():
            continue
        month = _text_of(_first_local(el, "month"))
        day = _text_of(_first_local(el, "day"))
        try:
            return PubDate(
                int(year),
                int(month) if month and month.isdigit() else None,
                int(day) if day and day.isdigit() else None,
            )
        except ValueError:
            continue
    return None


def _authors(root: ET.Element) -> list[str]:
    names = []
    for contrib in _iter_local(root, "contrib"):
        surname = _text_of(_first_local(contrib, "surname"))
        given = _text_of(_first_local(contrib, "given-names"))
        if surname and given:
            names.append(f"{given} {surname}")
        elif surname:
            names.append(surname)
    return names


def _from_custom_meta(root: ET.Element, keys: Sequence[str]) -> Optional[str]:
    wanted = {k.lower() for k in keys}
    for meta in _iter_local(root, "custom-meta"):
        name = _text_of(_first_local(meta, "meta-name"))
        value = _text_of(_first_local(meta, "meta-value"))
        if name and value and name.lower() in wanted:
            return value
    return None
