"""Render normalized records back into wire-format fixture texts.

Two styles:

``springer``
    Reproduces the defective real-world behaviour for online-only
    articles: RIS ships the article number in SP with issue 1 and no EP;
    the publisher JSON reports startingPage 1 / endingPage = PDF length
    and omits the article number entirely. This is the corruption pair
    the I.1/I.2 detectors exist for.

``faithful``
    A hypothetical well-behaved publisher: the JSON carries an
    ``articleNumber`` field, the RIS carries the number in the C7 custom
    field (a real-world convention) instead of abusing SP. Bundles
    rendered this way must produce zero findings.

JATS and Crossref are rendered the same in both styles; per the source
formats' semantics they carry the article number correctly.
"""

from __future__ import annotations

import json
from xml.sax.saxutils import escape

from refaudit.records import ArticleRecord, FormatBundle, SourceFormat
from refaudit.formats import (
    parse_crossref_work,
    parse_jats,
    parse_publisher_json,
    parse_ris,
)

STYLES = ("springer", "faithful")


def render_ris(record: ArticleRecord, style: str = "springer") -> str:
    _check_style(style)
    lines = ["TY  - JOUR"]
    if record.title:
        lines.append(f"TI  - {record.title}")
    for author in record.authors:
        lines.append(f"AU  - {author}")
    if record.journal_title:
        lines.append(f"JO  - {record.journal_title}")
    if record.volume:
        lines.append(f"VL  - {record.volume}")

    online_only = record.article_number is not None and record.start_page is None
    if online_only:
        if style == "springer":
            lines.append("IS  - 1")
            lines.append(f"SP  - {record.article_number}")
        else:
            if record.issue:
                lines.append(f"IS  - {record.issue}")
            lines.append(f"C7  - {record.article_number}")
    else:
        if record.issue:
            lines.append(f"IS  - {record.issue}")
        if record.start_page:
            lines.append(f"SP  - {record.start_page}")
        if record.end_page:
            lines.append(f"EP  - {record.end_page}")

    if record.publication_date:
        lines.append(f"PY  - {record.publication_date.year}")
        if record.publication_date.precise:
            d = record.publication_date
            lines.append(f"DA  - {d.year:04d}/{d.month:02d}/{d.day:02d}")
    if record.issn:
        lines.append(f"SN  - {record.issn}")
    lines.append(f"DO  - {record.doi}")
    lines.append("ER  - ")
    return "\n".join(lines) + "\n"


def render_publisher_json(record: ArticleRecord, style: str = "springer") -> str:
    _check_style(style)
    obj: dict = {
        "doi": record.doi,
        "title": record.title,
        "publicationName": record.journal_title,
        "creators": [{"creator": a} for a in record.authors],
    }
    if record.volume:
        obj["volume"] = record.volume
    if record.publication_date:
        obj["publicationDate"] = record.publication_date.isoformat()

    online_only = record.article_number is not None and record.start_page is None
    if online_only:
        if style == "springer":
            obj["number"] = "1"
            obj["startingPage"] = "1"
            # endingPage is the PDF length, not a real page locator.
            obj["endingPage"] = str(record.page_count or 1)
        else:
            if record.issue:
                obj["number"] = record.issue
            obj["articleNumber"] = record.article_number
    else:
        if record.issue:
            obj["number"] = record.issue
        if record.start_page:
            obj["startingPage"] = record.start_page
        if record.end_page:
            obj["endingPage"] = record.end_page

    return json.dumps({"records": [obj]}, indent=1, sort_keys=True)


def render_jats(record: ArticleRecord, style: str = "springer") -> str:
    _check_style(style)
    d = record.publication_date
    parts = [
        "<article>",
        "<front>",
        "<journal-meta>",
        f"<journal-title>{escape(record.journal_title)}</journal-title>",
    ]
    if record.issn:
        parts.append(f'<issn pub-type="epub">{escape(record.issn)}</issn>')
    parts.append("</journal-meta>")
    parts.append("<article-meta>")
    parts.append(f'<article-id pub-id-type="doi">{escape(record.doi)}</article-id>')
    parts.append(
        f"<title-group><article-title>{escape(record.title)}</article-title></title-group>"
    )
    if record.authors:
        parts.append("<contrib-group>")
        for author in record.authors:
            given, _, surname = author.rpartition(" ")
            parts.append(
                '<contrib contrib-type="author"><name>'
                f"<surname>{escape(surname)}</surname>"
                f"<given-names>{escape(given)}</given-names>"
                "</name></contrib>"
            )
        parts.append("</contrib-group>")
    if d:
        parts.append('<pub-date pub-type="epub">')
        if d.day is not None:
            parts.append(f"<day>{d.day:02d}</day>")
        if d.month is not None:
            parts.append(f"<month>{d.month:02d}</month>")
        parts.append(f"<year>{d.year}</year>")
        parts.append("</pub-date>")
    if record.volume:
        parts.append(f"<volume>{escape(record.volume)}</volume>")
    if record.article_number is not None and record.start_page is None:
        parts.append(f'<issue seq="{escape(record.article_number)}">1</issue>')
        parts.append(f"<elocation-id>{escape(record.article_number)}</elocation-id>")
    else:
        if record.issue:
            parts.append(f"<issue>{escape(record.issue)}</issue>")
        if record.start_page:
            parts.append(f"<fpage>{escape(record.start_page)}</fpage>")
        if record.end_page:
            parts.append(f"<lpage>{escape(record.end_page)}</lpage>")
    parts.append("</article-meta>")
    parts.append("</front>")
    parts.append("</article>")
    return "\n".join(parts) + "\n"


def render_crossref_work(
    record: ArticleRecord,
    style: str = "springer",
    is_referenced_by_count: int | None = None,
) -> str:
    _check_style(style)
    work: dict = {
        "DOI": record.doi,
        "title": [record.title],
        "container-title": [record.journal_title],
        "author": [_split_name(a) for a in record.authors],
        "type": "journal-article",
    }
    if record.issn:
        work["ISSN"] = [record.issn]
    if record.volume:
        work["volume"] = record.volume
    if record.publication_date:
        d = record.publication_date
        date_parts = [p for p in (d.year, d.month, d.day) if p is not None]
        work["issued"] = {"date-parts": [date_parts]}
    if record.article_number is not None and record.start_page is None:
        work["article-number"] = record.article_number
    else:
        if record.issue:
            work["issue"] = record.issue
        if record.start_page and record.end_page:
            work["page"] = f"{record.start_page}-{record.end_page}"
        elif record.start_page:
            work["page"] = record.start_page
    if is_referenced_by_count is not None:
        work["is-referenced-by-count"] = is_referenced_by_count
    return json.dumps({"status": "ok", "message": work}, indent=1, sort_keys=True)


def render_bundle(record: ArticleRecord, style: str = "springer") -> FormatBundle:
    """Render all four formats and re-parse them into one bundle."""
    ris_text = render_ris(record, style)
    json_text = render_publisher_json(record, style)
    jats_text = render_jats(record, style)
    crossref_text = render_crossref_work(record, style)

    json_record, _ = parse_publisher_json(json_text)
    crossref_record, _ = parse_crossref_work(crossref_text)
    return FormatBundle(
        doi=record.doi,
        per_format={
            SourceFormat.RIS: (parse_ris(ris_text), ris_text),
            SourceFormat.PUBLISHER_JSON: (json_record, json_text),
            SourceFormat.JATS: (parse_jats(jats_text), jats_text),
            SourceFormat.CROSSREF_WORK: (crossref_record, crossref_text),
        },
    )


def _split_name(full: str) -> dict:
    given, _, family = full.rpartition(" ")
    if not given:
        return {"family": family}
    return {"given": given, "family": family}


def _check_style(style: str) -> None:
    if style not in STYLES:
        raise ValueError(f"unknown render style {style!r}; expected one of {STYLES}")
