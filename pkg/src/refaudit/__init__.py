"""refaudit: detect article-number misattribution in scholarly metadata.

Library + CLI for auditing citation data of online-only journals whose
articles are identified by article numbers instead of page ranges:
format parsers (RIS, publisher JSON, JATS, Crossref), misattribution
detectors, cohort-normalized citation statistics, rate-limited citation
source clients, and a deterministic synthetic corpus that serves as the
ground-truth oracle for all of it.
"""

__version__ = "0.1.0"

from refaudit.records import (
    ArticleRecord,
    CitationCount,
    FormatBundle,
    LocatorKind,
    ParsedReference,
    PubDate,
    Source,
    SourceFormat,
    normalize_doi,
)

__all__ = [
    "ArticleRecord",
    "CitationCount",
    "FormatBundle",
    "LocatorKind",
    "ParsedReference",
    "PubDate",
    "Source",
    "SourceFormat",
    "normalize_doi",
    "__version__",
]
