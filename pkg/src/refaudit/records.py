"""Normalized domain types shared by every module.

The central type is :class:`ArticleRecord`: one article's metadata after
parsing, regardless of which wire format it came from. Parsers for the
individual formats live in :mod:`refaudit.formats`; this module only
defines the shapes and the normalization helpers they share.

DOI convention: lowercased, no ``https://doi.org/`` resolver prefix.
Citation sources disagree on DOI case and prefixing, and the DOI spec is
case-insensitive, so everything is normalized at the boundary.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

_DOI_PREFIX_RE = re.compile(r"^(?:https?://(?:dx\.)?doi\.org/|doi:)\s*", re.IGNORECASE)


class SourceFormat(str, Enum):
    """Which wire format a record was parsed from."""

    RIS = "RIS"
    PUBLISHER_JSON = "PublisherJSON"
    JATS = "JATS"
    CROSSREF_WORK = "CrossrefWork"
    SYNTHETIC = "Synthetic"


class LocatorKind(str, Enum):
    """Shape of the locator found in a human-readable reference string."""

    ARTICLE_NUMBER = "ArticleNumber"
    START_PAGE = "StartPage"
    PAGE_RANGE = "PageRange"
    ISSUE_COLON_LOCATOR = "IssueColonLocator"
    UNKNOWN = "Unknown"


class Source(str, Enum):
    """A citation-count provider."""

    CROSSREF = "Crossref"
    OPENCITATIONS = "OpenCitations"
    SEMANTIC_SCHOLAR = "SemanticScholar"
    SYNTHETIC = "Synthetic"


def normalize_doi(raw: str) -> str:
    """Strip any resolver prefix and lowercase. Raises ValueError on junk."""
    doi = _DOI_PREFIX_RE.sub("", raw.strip()).strip().lower()
    if not doi or "/" not in doi:
        raise ValueError(f"not a DOI: {raw!r}")
    return doi


@dataclass(frozen=True, order=True)
class PubDate:
    """Calendar date with mandatory year and optional month/day.

    ``sort_key`` fills missing parts for ordering only (a year-only date
    sorts as July 1, a year+month date as the 15th); the raw precision is
    preserved so cohort construction can refuse imprecise anchors.
    """

    year: int
    month: Optional[int] = None
    day: Optional[int] = None

    def __post_init__(self):
        if not 1900 <= self.year <= 2100:
            raise ValueError(f"year out of range: {self.year}")
        if self.month is not None and not 1 <= self.month <= 12:
            raise ValueError(f"month out of range: {self.month}")
        if self.day is not None:
            if self.month is None:
                raise ValueError("day given without month")
            if not 1 <= self.day <= 31:
                raise ValueError(f"day out of range: {self.day}")

    @property
    def precise(self) -> bool:
        """True when the date pins an actual calendar day."""
        return self.month is not None and self.day is not None

    def sort_key(self) -> tuple[int, int, int]:
        if self.month is None:
            return (self.year, 7, 1)
        if self.day is None:
            return (self.year, self.month, 15)
        return (self.year, self.month, self.day)

    def isoformat(self) -> str:
        if self.month is None:
            return f"{self.year:04d}"
        if self.day is None:
            return f"{self.year:04d}-{self.month:02d}"
        return f"{self.year:04d}-{self.month:02d}-{self.day:02d}"

    @classmethod
    def parse(cls, text: str) -> "PubDate":
        """Parse ``YYYY``, ``YYYY-MM``, ``YYYY-MM-DD`` (also ``/`` separated)."""
        parts = [p for p in re.split(r"[-/]", text.strip()) if p]
        if not parts or not parts[0].isdigit():
            raise ValueError(f"not a date: {text!r}")
        year = int(parts[0])
        month = int(parts[1]) if len(parts) > 1 and parts[1].isdigit() else None
        day = int(parts[2]) if len(parts) > 2 and parts[2].isdigit() else None
        return cls(year, month, day)


@dataclass
class ArticleRecord:
    """One article's metadata, normalized across formats.

    ``article_number`` from RIS is only ever a *candidate* (RIS has no
    dedicated field; the number rides in SP). Candidate status is
    recoverable: ``source_format == RIS and end_page is None``.
    """

    doi: str
    journal_title: str = ""
    issn: Optional[str] = None
    volume: Optional[str] = None
    issue: Optional[str] = None
    article_number: Optional[str] = None
    start_page: Optional[str] = None
    end_page: Optional[str] = None
    page_count: Optional[int] = None
    publication_date: Optional[PubDate] = None
    title: str = ""
    authors: list[str] = field(default_factory=list)
    source_format: SourceFormat = SourceFormat.SYNTHETIC

    def __post_init__(self):
        self.doi = normalize_doi(self.doi)
        if self.end_page is not None and self.start_page is None:
            raise ValueError("end_page present without start_page")
        if self.page_count is not None and self.page_count < 1:
            raise ValueError(f"page_count must be >= 1, got {self.page_count}")

    @property
    def year(self) -> Optional[int]:
        return self.publication_date.year if self.publication_date else None

    def to_dict(self) -> dict:
        return {
            "doi": self.doi,
            "journal_title": self.journal_title,
            "issn": self.issn,
            "volume": self.volume,
            "issue": self.issue,
            "article_number": self.article_number,
            "start_page": self.start_page,
            "end_page": self.end_page,
            "page_count": self.page_count,
            "publication_date": (
                self.publication_date.isoformat() if self.publication_date else None
            ),
            "title": self.title,
            "authors": list(self.authors),
            "source_format": self.source_format.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ArticleRecord":
        date = data.get("publication_date")
        return cls(
            doi=data["doi"],
            journal_title=data.get("journal_title", ""),
            issn=data.get("issn"),
            volume=data.get("volume"),
            issue=data.get("issue"),
            article_number=data.get("article_number"),
            start_page=data.get("start_page"),
            end_page=data.get("end_page"),
            page_count=data.get("page_count"),
            publication_date=PubDate.parse(date) if date else None,
            title=data.get("title", ""),
            authors=list(data.get("authors", [])),
            source_format=SourceFormat(data.get("source_format", "Synthetic")),
        )


@dataclass
class ParsedReference:
    """A human-readable bibliography entry, decomposed.

    ``locator`` is the trailing number(s): an article number, a start
    page, a page range, or the L in the ``Journal V(1):L`` shape.
    """

    raw: str
    journal_hint: str = ""
    volume: Optional[str] = None
    issue: Optional[str] = None
    locator: Optional[str] = None
    locator_kind: LocatorKind = LocatorKind.UNKNOWN
    year: Optional[int] = None

    def __post_init__(self):
        if not self.raw.strip():
            raise ValueError("raw reference text must be non-empty")
        if self.locator_kind is LocatorKind.PAGE_RANGE:
            nums = re.findall(r"\d+", self.locator or "")
            if len(nums) < 2 or int(nums[1]) < int(nums[0]):
                raise ValueError(f"bad page range locator: {self.locator!r}")


@dataclass
class FormatBundle:
    """The same article as seen through several formats at once.

    Maps each format to its parsed record plus the raw text it was parsed
    from (the raw text is what the I.2 token scan runs over).
    """

    doi: str
    per_format: dict[SourceFormat, tuple[ArticleRecord, str]]

    def __post_init__(self):
        self.doi = normalize_doi(self.doi)
        if not self.per_format:
            raise ValueError("bundle needs at least one format")
        for fmt, (record, _raw) in self.per_format.items():
            if record.doi != self.doi:
                raise ValueError(
                    f"bundle DOI {self.doi} != {fmt.value} record DOI {record.doi}"
                )


@dataclass(frozen=True)
class CitationCount:
    """A citation count for one DOI from one provider at one moment."""

    doi: str
    source: Source
    count: int
    retrieved_at: str  # ISO-8601 UTC timestamp

    def __post_init__(self):
        if self.count < 0:
            raise ValueError(f"count must be >= 0, got {self.count}")

    def to_dict(self) -> dict:
        return {
            "doi": self.doi,
            "source": self.source.value,
            "count": self.count,
            "retrieved_at": self.retrieved_at,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CitationCount":
        return cls(
            doi=data["doi"],
            source=Source(data["source"]),
            count=int(data["count"]),
            retrieved_at=data["retrieved_at"],
        )
