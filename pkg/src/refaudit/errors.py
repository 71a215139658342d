"""Exception taxonomy for the whole package.

Every failure mode callers are expected to branch on gets its own class,
so audit pipelines can distinguish "this DOI is unknown to the source"
from "the source is down" from "our cache is damaged".
"""

from __future__ import annotations


class RefAuditError(Exception):
    """Base class for all refaudit errors."""


# --- parsing ---------------------------------------------------------------


class MissingDOI(RefAuditError):
    """The input carries no DOI, which every record must have."""


class MalformedRIS(RefAuditError):
    """Input is not a parseable RIS record (e.g. no ER terminator)."""


class MalformedPayload(RefAuditError):
    """Input is not a parseable JSON/XML payload of the expected shape."""


class EmptyReference(RefAuditError):
    """A reference string was empty or whitespace-only."""


# --- detectors -------------------------------------------------------------


class MismatchedInput(RefAuditError):
    """Records passed to a detector do not describe the same article."""


class InsufficientFormats(RefAuditError):
    """A cross-format comparison needs at least two formats."""


# --- citation sources ------------------------------------------------------


class SourceError(RefAuditError):
    """Base class for citation-source client failures."""


class NotFound(SourceError):
    """The DOI is unknown to the queried source."""


class RateLimited(SourceError):
    """The source kept rate-limiting us after all retries."""


class SourceUnavailable(SourceError):
    """The source failed (5xx, connection error, bad payload) after retries."""


class UnknownJournal(SourceError):
    """The journal identifier could not be resolved."""


class OfflineCacheMiss(SourceError):
    """Offline mode was requested and the cache has no usable entry."""


class IncompleteListing(SourceError):
    """A paginated listing failed partway; carries the records fetched so far."""

    def __init__(self, message: str, records: list):
        super().__init__(message)
        self.records = records


class StorageCorrupt(RefAuditError):
    """The on-disk cache store is unreadable."""


# --- cohort statistics -----------------------------------------------------


class NoAnchor(RefAuditError):
    """No article numbered 1 exists in the requested volume."""


class MultipleAnchors(RefAuditError):
    """More than one article claims number 1 (corrupt input data)."""


class AnchorDateImprecise(RefAuditError):
    """The anchor's publication date lacks day precision."""


class EmptyVolume(RefAuditError):
    """No articles were supplied for cohort construction."""


class TooFew(RefAuditError):
    """Normalization needs at least two values."""


class EmptyPool(RefAuditError):
    """Histogram pooling got an empty input."""


class MissingAnchor(RefAuditError):
    """An anchor DOI is absent from the rank-scan listing."""


# --- synthetic corpus ------------------------------------------------------


class SpecError(RefAuditError):
    """A corpus spec violates its own invariants."""
