"""Cohort-normalized citation statistics.

The methodology: find the article numbered 1 of a volume (the anchor),
gather the articles published the same day (walking forward day by day
until there are at least 15), z-normalize the citation counts of anchor
plus cohort together, and look at where anchors land — in the normalized
histogram and in the full citation-count ranking. Systematic anchor
outliers are the fingerprint of number-1 misattribution.

Normalization is computed from exact integer deviations (``n*c - sum``)
before any float enters, so the output mean is exactly 0, the population
std is 1 to ~1 ulp, and integer-shifted inputs produce bit-identical z
values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

from refaudit.errors import (
    AnchorDateImprecise,
    EmptyPool,
    EmptyVolume,
    MissingAnchor,
    MultipleAnchors,
    NoAnchor,
    TooFew,
)
from refaudit.records import ArticleRecord, CitationCount

DEFAULT_MIN_COHORT = 15
DEFAULT_BIN_WIDTH = 0.25
DEFAULT_TOP_K = (10, 100, 300, 10000)
DEFAULT_CUTOFF_YEAR = 2011


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass
class Cohort:
    """An anchor plus its same-day(ish) comparison articles."""

    journal: str
    volume_label: str
    year: int
    anchor: tuple[ArticleRecord, Optional[CitationCount]]
    comparisons: list[tuple[ArticleRecord, Optional[CitationCount]]]
    days_extended: int = 0
    exhausted: bool = False  # ran out of days before reaching min size

    def counts(self) -> tuple[int, list[int]]:
        """(anchor count, comparison counts); requires counts attached."""
        anchor_record, anchor_count = self.anchor
        if anchor_count is None:
            raise ValueError(f"cohort for {anchor_record.doi} has no anchor count")
        values = []
        for record, count in self.comparisons:
            if count is None:
                raise ValueError(f"comparison {record.doi} has no count")
            values.append(count.count)
        return anchor_count.count, values


class NormalizedCounts(NamedTuple):
    z: list[float]
    degenerate: bool


@dataclass
class NormalizedHistogram:
    """z-scores of comparisons with anchors as a separate overlay."""

    z_values: list[float]
    anchor_z: list[float]
    bin_width: float = DEFAULT_BIN_WIDTH
    label: str = ""
    degenerate: bool = False


@dataclass
class RankScan:
    """Anchor positions in the descending citation-count ordering."""

    total_articles: int
    anchor_ranks: list[int]
    top_k_counts: dict[int, int]
    ordered: list[tuple[str, int]] = field(default_factory=list)  # (doi, count)


@dataclass
class TemporalSplit:
    pre: Optional[NormalizedHistogram]
    post: Optional[NormalizedHistogram]
    pre_years: list[int]
    post_years: list[int]


# ---------------------------------------------------------------------------
# Anchor and cohort construction
# ---------------------------------------------------------------------------


def find_anchor(
    articles: Sequence[ArticleRecord], volume_label: Optional[str] = None
) -> ArticleRecord:
    """The unique article numbered 1 in the given volume.

    ``volume_label=None`` searches the whole listing, for the older
    regime where one numbering sequence spans all volumes and only a
    single article 1 exists.
    """
    candidates = [
        a
        for a in articles
        if a.article_number == "1"
        and (volume_label is None or a.volume == volume_label)
    ]
    if not candidates:
        where = f"volume {volume_label}" if volume_label else "listing"
        raise NoAnchor(f"no article numbered 1 in {where}")
    if len(candidates) > 1:
        dois = ", ".join(sorted(a.doi for a in candidates))
        raise MultipleAnchors(f"multiple articles claim number 1: {dois}")
    return candidates[0]


def build_cohort(
    anchor: ArticleRecord,
    volume_articles: Sequence[ArticleRecord],
    min_size: int = DEFAULT_MIN_COHORT,
    counts: Optional[dict[str, CitationCount]] = None,
    journal: Optional[str] = None,
    volume_label: Optional[str] = None,
) -> Cohort:
    """Same-day comparisons, extended day by day until ``min_size``.

    Comparisons start as every article sharing the anchor's publication
    day; while the cohort is too small, the next later calendar day that
    has publications is appended wholesale. Days before the anchor never
    count. The result does not depend on the input ordering: days are
    chronological, articles within a day sorted by DOI.
    """
    if anchor.publication_date is None or not anchor.publication_date.precise:
        raise AnchorDateImprecise(
            f"anchor {anchor.doi} has no day-precision date "
            f"({anchor.publication_date.isoformat() if anchor.publication_date else 'none'})"
        )
    pool = [a for a in volume_articles if a.doi != anchor.doi]
    if not pool:
        raise EmptyVolume("no articles besides the anchor")

    anchor_day = anchor.publication_date.sort_key()
    by_day: dict[tuple[int, int, int], list[ArticleRecord]] = {}
    for article in pool:
        if article.publication_date is None:
            continue  # undatable articles cannot join a day cohort
        by_day.setdefault(article.publication_date.sort_key(), []).append(article)
    for day in by_day:
        by_day[day].sort(key=lambda a: a.doi)

    comparisons = list(by_day.get(anchor_day, []))
    later_days = sorted(day for day in by_day if day > anchor_day)
    days_extended = 0
    for day in later_days:
        if len(comparisons) >= min_size:
            break
        comparisons.extend(by_day[day])
        days_extended += 1
    exhausted = len(comparisons) < min_size

    def _with_count(record: ArticleRecord):
        return (record, counts.get(record.doi) if counts else None)

    cohort = Cohort(
        journal=journal or anchor.journal_title,
        volume_label=volume_label or anchor.volume or "",
        year=anchor.publication_date.year,
        anchor=_with_count(anchor),
        comparisons=[_with_count(a) for a in comparisons],
        days_extended=days_extended,
        exhausted=exhausted,
    )
    _check_single_source(cohort)
    return cohort


def _check_single_source(cohort: Cohort) -> None:
    sources = {
        count.source
        for _, count in [cohort.anchor, *cohort.comparisons]
        if count is not None
    }
    if len(sources) > 1:
        raise ValueError(f"cohort mixes citation sources: {sorted(s.value for s in sources)}")


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------


def normalize_counts(counts: Sequence[int]) -> NormalizedCounts:
    """z-scores with population sigma; all-equal input is flagged degenerate.

    Uses exact integer deviations d_i = n*c_i - sum(c): the mean of the
    output is exactly zero, and adding any integer constant to all inputs
    leaves the output bit-identical.
    """
    n = len(counts)
    if n < 2:
        raise TooFew(f"need at least 2 values, got {n}")
    for c in counts:
        if not isinstance(c, int) or isinstance(c, bool):
            raise TypeError(f"counts must be integers, got {c!r}")
        if c < 0:
            raise ValueError(f"counts must be non-negative, got {c}")

    total = sum(counts)
    deviations = [n * c - total for c in counts]
    sum_sq = sum(d * d for d in deviations)
    if sum_sq == 0:
        return NormalizedCounts([0.0] * n, degenerate=True)
    scale = math.sqrt(sum_sq / n)  # equals n * sigma
    return NormalizedCounts([d / scale for d in deviations], degenerate=False)


def normalize_cohort(
    cohort: Cohort,
    include_anchor: bool = True,
    bin_width: float = DEFAULT_BIN_WIDTH,
    label: str = "",
) -> NormalizedHistogram:
    """Normalize one cohort's counts into a histogram-ready record.

    ``include_anchor`` controls whether the anchor participates in the
    mean/sigma (the default; plots put anchor and comparisons on one
    axis). With it off, the anchor is scored against the comparisons'
    own statistics instead.
    """
    anchor_count, comparison_counts = cohort.counts()
    if include_anchor:
        normalized = normalize_counts([anchor_count, *comparison_counts])
        anchor_z, z_values = normalized.z[0], normalized.z[1:]
        degenerate = normalized.degenerate
    else:
        normalized = normalize_counts(comparison_counts)
        z_values = normalized.z
        degenerate = normalized.degenerate
        if degenerate:
            anchor_z = 0.0
        else:
            n = len(comparison_counts)
            total = sum(comparison_counts)
            sum_sq = sum((n * c - total) ** 2 for c in comparison_counts)
            anchor_z = (n * anchor_count - total) / math.sqrt(sum_sq / n)
    return NormalizedHistogram(
        z_values=list(z_values),
        anchor_z=[anchor_z],
        bin_width=bin_width,
        label=label or f"{cohort.journal}/{cohort.year}",
        degenerate=degenerate,
    )


def pool_histograms(
    histograms: Sequence[NormalizedHistogram], label: str = "pooled"
) -> NormalizedHistogram:
    """Concatenate already-normalized histograms; nothing is renormalized."""
    if not histograms:
        raise EmptyPool("nothing to pool")
    z_values: list[float] = []
    anchor_z: list[float] = []
    for histogram in histograms:
        z_values.extend(histogram.z_values)
        anchor_z.extend(histogram.anchor_z)
    return NormalizedHistogram(
        z_values=z_values,
        anchor_z=anchor_z,
        bin_width=histograms[0].bin_width,
        label=label,
        degenerate=any(h.degenerate for h in histograms),
    )


# ---------------------------------------------------------------------------
# Rank concentration
# ---------------------------------------------------------------------------


def rank_scan(
    articles_with_counts: Iterable[tuple[str, int]],
    anchor_dois: Sequence[str],
    top_k: Sequence[int] = DEFAULT_TOP_K,
) -> RankScan:
    """Positions of anchors in the count-descending ranking.

    Ties break by DOI ascending, so the ranking (and therefore every
    rank) is independent of input order.
    """
    ordered = sorted(articles_with_counts, key=lambda item: (-item[1], item[0]))
    rank_of = {doi: i + 1 for i, (doi, _count) in enumerate(ordered)}
    ranks = []
    for doi in sorted(set(anchor_dois)):
        if doi not in rank_of:
            raise MissingAnchor(f"anchor {doi} missing from the listing")
        ranks.append(rank_of[doi])
    ranks.sort()
    top_k_counts = {k: sum(1 for r in ranks if r <= k) for k in sorted(top_k)}
    return RankScan(
        total_articles=len(ordered),
        anchor_ranks=ranks,
        top_k_counts=top_k_counts,
        ordered=ordered,
    )


# ---------------------------------------------------------------------------
# Temporal split
# ---------------------------------------------------------------------------


def temporal_split(
    cohorts: Sequence[Cohort],
    cutoff_year: int = DEFAULT_CUTOFF_YEAR,
    include_anchor: bool = True,
) -> TemporalSplit:
    """Pool cohorts into a before/after pair around ``cutoff_year``.

    Pre is strictly before the cutoff, post is cutoff and later. An
    empty side comes back as None rather than failing the run.
    """
    pre_hists, post_hists = [], []
    pre_years, post_years = [], []
    for cohort in cohorts:
        histogram = normalize_cohort(cohort, include_anchor=include_anchor)
        if cohort.year < cutoff_year:
            pre_hists.append(histogram)
            pre_years.append(cohort.year)
        else:
            post_hists.append(histogram)
            post_years.append(cohort.year)
    pre = pool_histograms(pre_hists, label=f"pre-{cutoff_year}") if pre_hists else None
    post = (
        pool_histograms(post_hists, label=f"post-{cutoff_year}") if post_hists else None
    )
    return TemporalSplit(pre=pre, post=post, pre_years=sorted(pre_years), post_years=sorted(post_years))


# ---------------------------------------------------------------------------
# CSV emission (consumed by the CLI and the SVG renderer)
# ---------------------------------------------------------------------------


def histogram_to_csv(histograms: Sequence[NormalizedHistogram]) -> str:
    """Rows of ``label,z,is_anchor`` for one or more histograms."""
    lines = ["label,z,is_anchor"]
    for histogram in histograms:
        for z in histogram.z_values:
            lines.append(f"{histogram.label},{format(z, '.10g')},0")
        for z in histogram.anchor_z:
            lines.append(f"{histogram.label},{format(z, '.10g')},1")
    return "\n".join(lines) + "\n"


def rank_to_csv(scan: RankScan, label: str = "") -> str:
    """Rows of ``label,rank,count,is_anchor`` in rank order."""
    anchor_set = set(scan.anchor_ranks)
    lines = ["label,rank,count,is_anchor"]
    for i, (_doi, count) in enumerate(scan.ordered, start=1):
        lines.append(f"{label},{i},{count},{1 if i in anchor_set else 0}")
    return "\n".join(lines) + "\n"
