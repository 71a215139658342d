"""Citation-source clients: Crossref, OpenCitations, Semantic Scholar.

One shared client handles all three count providers plus the Crossref
journal-listing endpoint, behind a single rate limiter and an on-disk
cache so long audits are resumable and polite:

  * at most ``max_concurrent_requests`` requests in flight overall;
  * at least ``min_interval`` seconds between requests to the same host;
  * exponential-backoff retries, then a typed error (NotFound vs
    RateLimited vs SourceUnavailable stay distinguishable);
  * every response cached; ``offline=True`` serves the cache only and
    never opens a connection.

Counts from different sources are deliberately never merged — the
disagreement between providers is itself a signal the audit reports.
"""

from __future__ import annotations

import logging
import os
import threading
import time
from dataclasses import dataclass, field as dc_field
from datetime import datetime, timezone
from typing import Optional
from urllib.parse import quote, urlsplit

import requests

from refaudit import __version__
from refaudit.cache import JsonlCache
from refaudit.errors import (
    IncompleteListing,
    NotFound,
    OfflineCacheMiss,
    RateLimited,
    SourceUnavailable,
    UnknownJournal,
)
from refaudit.formats.crossref import parse_crossref_work
from refaudit.records import ArticleRecord, CitationCount, Source

logger = logging.getLogger(__name__)

CONTACT_EMAIL_ENV = "REFAUDIT_CONTACT_EMAIL"

DEFAULT_BASE_URLS = {
    Source.CROSSREF: "https://api.crossref.org",
    Source.OPENCITATIONS: "https://opencitations.net/index/api/v1",
    Source.SEMANTIC_SCHOLAR: "https://api.semanticscholar.org",
}

_RETRYABLE_STATUS = frozenset({429, 500, 502, 503, 504})


@dataclass
class FetchPolicy:
    """Knobs for politeness, retries and caching."""

    max_concurrent_requests: int = 4
    min_interval: dict[Source, float] = dc_field(
        default_factory=lambda: {
            Source.CROSSREF: 1.0,
            Source.OPENCITATIONS: 2.0,
            Source.SEMANTIC_SCHOLAR: 2.0,
        }
    )
    max_retries: int = 3
    backoff_start: float = 1.0
    cache_ttl: float = 30 * 24 * 3600.0
    contact_email: str = dc_field(
        default_factory=lambda: os.environ.get(CONTACT_EMAIL_ENV, "")
    )

    def __post_init__(self):
        if self.max_concurrent_requests < 1:
            raise ValueError("max_concurrent_requests must be >= 1")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")
        if self.backoff_start <= 0 or self.cache_ttl <= 0:
            raise ValueError("backoff_start and cache_ttl must be positive")
        if any(v < 0 for v in self.min_interval.values()):
            raise ValueError("min_interval values must be >= 0")

    def interval_for(self, source: Source) -> float:
        return self.min_interval.get(source, 2.0)


class RateLimiter:
    """Caps in-flight requests and spaces requests per host."""

    def __init__(self, max_concurrent: int):
        self._semaphore = threading.Semaphore(max_concurrent)
        self._host_locks: dict[str, threading.Lock] = {}
        self._next_allowed: dict[str, float] = {}
        self._registry_lock = threading.Lock()

    def _lock_for(self, host: str) -> threading.Lock:
        with self._registry_lock:
            if host not in self._host_locks:
                self._host_locks[host] = threading.Lock()
            return self._host_locks[host]

    def acquire(self, host: str, min_interval: float) -> None:
        self._semaphore.acquire()
        try:
            lock = self._lock_for(host)
            with lock:
                now = time.monotonic()
                wait = self._next_allowed.get(host, 0.0) - now
                if wait > 0:
                    time.sleep(wait)
                    now = time.monotonic()
                self._next_allowed[host] = now + min_interval
        except BaseException:
            self._semaphore.release()
            raise

    def release(self) -> None:
        self._semaphore.release()


class CitationClient:
    """Shared, thread-safe client for all citation sources.

    ``base_urls`` override the live endpoints (tests point them at a
    local mock server). ``offline=True`` answers from cache only.
    """

    def __init__(
        self,
        policy: Optional[FetchPolicy] = None,
        cache_dir: Optional[str] = None,
        offline: bool = False,
        base_urls: Optional[dict[Source, str]] = None,
        session: Optional[requests.Session] = None,
    ):
        self.policy = policy or FetchPolicy()
        self.offline = offline
        self.base_urls = dict(DEFAULT_BASE_URLS)
        if base_urls:
            self.base_urls.update(base_urls)
        self.cache = JsonlCache(cache_dir) if cache_dir else None
        self._session = session
        self._session_lock = threading.Lock()
        self._limiter = RateLimiter(self.policy.max_concurrent_requests)

    # -- plumbing ------------------------------------------------------------

    @property
    def session(self) -> requests.Session:
        with self._session_lock:
            if self._session is None:
                self._session = requests.Session()
            return self._session

    def _user_agent(self) -> str:
        email = self.policy.contact_email
        if not email:
            raise ValueError(
                "contact_email required for live requests "
                f"(set {CONTACT_EMAIL_ENV} or FetchPolicy.contact_email)"
            )
        return f"refaudit/{__version__} (mailto:{email})"

    def _get(self, source: Source, url: str) -> requests.Response:
        """One GET with rate limiting and retries. Raises typed errors."""
        if self.offline:
            raise OfflineCacheMiss(f"offline mode: would have fetched {url}")
        headers = {"User-Agent": self._user_agent()}
        host = urlsplit(url).netloc
        last_status: Optional[int] = None
        for attempt in range(self.policy.max_retries + 1):
            if attempt:
                time.sleep(self.policy.backoff_start * 2 ** (attempt - 1))
            self._limiter.acquire(host, self.policy.interval_for(source))
            try:
                response = self.session.get(url, headers=headers, timeout=30)
            except requests.RequestException as exc:
                last_status = None
                logger.warning("%s: connection error (%s), attempt %d", url, exc, attempt + 1)
                continue
            finally:
                self._limiter.release()
            if response.status_code == 404:
                raise NotFound(f"{source.value}: not found: {url}")
            if response.status_code in _RETRYABLE_STATUS:
                last_status = response.status_code
                logger.warning("%s: HTTP %d, attempt %d", url, response.status_code, attempt + 1)
                continue
            if response.status_code != 200:
                raise SourceUnavailable(
                    f"{source.value}: HTTP {response.status_code} for {url}"
                )
            return response
        if last_status == 429:
            raise RateLimited(f"{source.value}: still rate-limited after retries: {url}")
        raise SourceUnavailable(f"{source.value}: gave up after retries: {url}")

    def _now(self) -> str:
        return datetime.now(timezone.utc).isoformat()

    # -- citation counts -----------------------------------------------------

    def fetch_citation_count(self, doi: str, source: Source) -> CitationCount:
        """Cached citation count for one DOI from one provider."""
        if source is Source.SYNTHETIC:
            raise ValueError("cannot fetch counts from the Synthetic source")
        key = (f"count:{doi}", source.value)
        if self.cache is not None:
            hit = self.cache.get(key, ttl_seconds=self.policy.cache_ttl)
            if hit is not None:
                return CitationCount.from_dict(hit)
        if self.offline:
            raise OfflineCacheMiss(f"no cached {source.value} count for {doi}")

        count = self._fetch_count_live(doi, source)
        result = CitationCount(
            doi=doi, source=source, count=count, retrieved_at=self._now()
        )
        if self.cache is not None:
            self.cache.put(key, result.to_dict())
        return result

    def _fetch_count_live(self, doi: str, source: Source) -> int:
        base = self.base_urls[source].rstrip("/")
        quoted = quote(doi, safe="")
        if source is Source.CROSSREF:
            response = self._get(source, f"{base}/works/{quoted}")
            message = _json_of(response, source).get("message", {})
            count = message.get("is-referenced-by-count")
            if not isinstance(count, int):
                raise SourceUnavailable(
                    f"Crossref response for {doi} lacks is-referenced-by-count"
                )
            return count
        if source is Source.OPENCITATIONS:
            response = self._get(source, f"{base}/citation-count/{quoted}")
            body = _json_of(response, source)
            if not isinstance(body, list) or not body or "count" not in body[0]:
                raise SourceUnavailable(
                    f"OpenCitations response for {doi} lacks a count field"
                )
            return int(body[0]["count"])
        if source is Source.SEMANTIC_SCHOLAR:
            response = self._get(
                source, f"{base}/graph/v1/paper/DOI:{quoted}?fields=citationCount"
            )
            body = _json_of(response, source)
            count = body.get("citationCount")
            if not isinstance(count, int):
                raise SourceUnavailable(
                    f"Semantic Scholar response for {doi} lacks citationCount"
                )
            return count
        raise ValueError(f"unsupported source {source}")

    # -- journal listings (Crossref) ------------------------------------------

    def fetch_journal_articles(
        self,
        issn: str,
        year: Optional[int] = None,
        date_range: Optional[tuple[str, str]] = None,
        rows: int = 200,
    ) -> list[ArticleRecord]:
        """All works of a journal in a date window, in stable DOI order.

        ``year`` is shorthand for the whole calendar year. Counts seen in
        the listing are written into the cache, so later per-DOI Crossref
        count lookups are free. Page failures are retried; if a page
        still fails, the records gathered so far ride on the
        IncompleteListing error.
        """
        if year is not None and date_range is not None:
            raise ValueError("pass either year or date_range, not both")
        if year is not None:
            date_range = (f"{year:04d}-01-01", f"{year:04d}-12-31")
        if date_range is None:
            raise ValueError("a year or a date_range is required")

        key = (f"listing:{issn}:{date_range[0]}:{date_range[1]}", Source.CROSSREF.value)
        if self.cache is not None:
            hit = self.cache.get(key, ttl_seconds=self.policy.cache_ttl)
            if hit is not None:
                return [ArticleRecord.from_dict(d) for d in hit]
        if self.offline:
            raise OfflineCacheMiss(f"no cached listing for {issn} {date_range}")

        base = self.base_urls[Source.CROSSREF].rstrip("/")
        filt = f"from-pub-date:{date_range[0]},until-pub-date:{date_range[1]}"
        cursor = "*"
        records: list[ArticleRecord] = []
        counts: list[CitationCount] = []
        while True:
            url = (
                f"{base}/journals/{quote(issn, safe='')}/works"
                f"?filter={quote(filt, safe=':,-')}&rows={rows}&cursor={quote(cursor, safe='')}"
            )
            try:
                response = self._get(Source.CROSSREF, url)
            except NotFound as exc:
                raise UnknownJournal(f"Crossref does not know journal {issn}") from exc
            except (RateLimited, SourceUnavailable) as exc:
                raise IncompleteListing(
                    f"listing for {issn} failed after {len(records)} records: {exc}",
                    records,
                ) from exc
            message = _json_of(response, Source.CROSSREF).get("message", {})
            items = message.get("items", [])
            for item in items:
                record, count = parse_crossref_work(item)
                records.append(record)
                if count is not None:
                    counts.append(
                        CitationCount(
                            doi=record.doi,
                            source=Source.CROSSREF,
                            count=count,
                            retrieved_at=self._now(),
                        )
                    )
            next_cursor = message.get("next-cursor")
            if not items or not next_cursor or next_cursor == cursor:
                break
            cursor = next_cursor

        records.sort(key=lambda r: r.doi)
        if self.cache is not None:
            self.cache.put(key, [r.to_dict() for r in records])
            for cc in counts:
                self.cache.put((f"count:{cc.doi}", cc.source.value), cc.to_dict())
        return records

    # -- cache passthroughs ----------------------------------------------------

    def cache_get(self, key: tuple[str, str]):
        if self.cache is None:
            return None
        return self.cache.get(key, ttl_seconds=self.policy.cache_ttl)

    def cache_put(self, key: tuple[str, str], value):
        if self.cache is None:
            raise ValueError("client has no cache directory configured")
        return self.cache.put(key, value)


def _json_of(response: requests.Response, source: Source):
    try:
        return response.json()
    except ValueError as exc:
        raise SourceUnavailable(f"{source.value}: response is not JSON") from exc
