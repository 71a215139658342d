"""Deterministic synthetic citation corpus with a misattribution engine.

The generator builds a multi-journal, multi-volume article set and a
citation graph over it; the corruption engine then reroutes edges the
way real metadata pipelines do:

  RerouteToArticle1   a citation of article X of volume V lands on
                      article 1 of volume V;
  RerouteToPdfLength  a citation of an article with a PDF of L pages
                      lands on the article *numbered* L, usually in the
                      same volume, sometimes in another one.

Everything is reproducible: a single SplitMix64 stream drives
generation, a second one (seed+1 in :func:`build_corpus`) drives
corruption, and no float ever influences corpus structure. Iteration
orders are fixed: articles are created journal by journal, volume by
volume, day by day; the citation pass walks articles chronologically
(ties by creation index); corruption walks edges by index, drawing one
trigger per (edge, rule) pair whether or not an earlier rule already
fired, and applying the first active rule that triggered.

Conservation is load-bearing: corruption never adds or removes edges,
so total citation mass is identical before and after. Reroutes that
cannot find their target (no article numbered L) leave the edge intact
and are recorded separately as unreroutable.
"""

from __future__ import annotations

import csv
import io
import json
import math
from bisect import bisect_right
from dataclasses import dataclass, field
from datetime import date as _date, timedelta
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence

from refaudit.errors import SpecError
from refaudit.records import ArticleRecord, CitationCount, PubDate, Source, SourceFormat
from refaudit.rng import SplitMix64

_WEIGHT_SHIFT = 20  # fixed-point scale for fractional attachment exponents
_EPOCH_TS = "1970-01-01T00:00:00+00:00"  # synthetic counts carry a fixed timestamp


class RerouteKind(str, Enum):
    ARTICLE1 = "RerouteToArticle1"
    PDF_LENGTH = "RerouteToPdfLength"


# ---------------------------------------------------------------------------
# Spec types
# ---------------------------------------------------------------------------


@dataclass
class CorruptionRule:
    kind: RerouteKind
    probability: float
    active_years: Optional[tuple[int, int]] = None  # inclusive (first, last)
    cross_volume_probability: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.probability <= 1.0:
            raise SpecError(f"probability out of [0,1]: {self.probability}")
        if not 0.0 <= self.cross_volume_probability <= 1.0:
            raise SpecError(
                f"cross_volume_probability out of [0,1]: {self.cross_volume_probability}"
            )

    def active_for(self, year: int) -> bool:
        if self.active_years is None:
            return True
        first, last = self.active_years
        return first <= year <= last

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "probability": self.probability,
            "active_years": list(self.active_years) if self.active_years else None,
            "cross_volume_probability": self.cross_volume_probability,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CorruptionRule":
        years = data.get("active_years")
        return cls(
            kind=RerouteKind(data["kind"]),
            probability=float(data["probability"]),
            active_years=tuple(years) if years else None,
            cross_volume_probability=float(data.get("cross_volume_probability", 0.0)),
        )


@dataclass
class JournalSpec:
    """Shape of one synthetic journal.

    Volumes publish on ``days_per_volume`` consecutive days starting
    January 2 of their year; article numbers restart at 1 per volume and
    increment by one. ``citation_window_days`` limits how far back
    references reach (None = unlimited). ``attachment_exponent`` must be
    a non-negative multiple of 0.5 so weights stay exact integers.
    """

    name: str
    volumes: int
    first_year: int
    articles_per_day: tuple[int, int] = (8, 12)
    pdf_length: tuple[int, int] = (3, 30)
    refs_per_article: tuple[int, int] = (11, 15)
    attachment_exponent: float = 1.0
    external_citation_rate: float = 0.0
    days_per_volume: int = 1
    citation_window_days: Optional[int] = None

    def __post_init__(self):
        if self.volumes < 1:
            raise SpecError(f"volumes must be >= 1, got {self.volumes}")
        if self.days_per_volume < 1:
            raise SpecError("days_per_volume must be >= 1")
        for label, (lo, hi) in (
            ("articles_per_day", self.articles_per_day),
            ("pdf_length", self.pdf_length),
            ("refs_per_article", self.refs_per_article),
        ):
            if lo < 0 or hi < lo:
                raise SpecError(f"bad {label} range ({lo}, {hi})")
        if (self.articles_per_day[0] + self.articles_per_day[1]) / 2 < 1:
            raise SpecError("articles_per_day mean must be >= 1")
        if self.pdf_length[0] < 1:
            raise SpecError("pdf_length must start at >= 1")
        if not 0.0 <= self.external_citation_rate <= 1.0:
            raise SpecError("external_citation_rate out of [0,1]")
        doubled = self.attachment_exponent * 2
        if doubled < 0 or doubled != int(doubled):
            raise SpecError(
                "attachment_exponent must be a non-negative multiple of 0.5"
            )

    def year_of_volume(self, volume: int) -> int:
        return self.first_year + (volume - 1)

    @property
    def slug(self) -> str:
        return "".join(c if c.isalnum() else "-" for c in self.name.lower())

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "volumes": self.volumes,
            "first_year": self.first_year,
            "articles_per_day": list(self.articles_per_day),
            "pdf_length": list(self.pdf_length),
            "refs_per_article": list(self.refs_per_article),
            "attachment_exponent": self.attachment_exponent,
            "external_citation_rate": self.external_citation_rate,
            "days_per_volume": self.days_per_volume,
            "citation_window_days": self.citation_window_days,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "JournalSpec":
        return cls(
            name=data["name"],
            volumes=int(data["volumes"]),
            first_year=int(data["first_year"]),
            articles_per_day=tuple(data.get("articles_per_day", (8, 12))),
            pdf_length=tuple(data.get("pdf_length", (3, 30))),
            refs_per_article=tuple(data.get("refs_per_article", (11, 15))),
            attachment_exponent=float(data.get("attachment_exponent", 1.0)),
            external_citation_rate=float(data.get("external_citation_rate", 0.0)),
            days_per_volume=int(data.get("days_per_volume", 1)),
            citation_window_days=data.get("citation_window_days"),
        )


@dataclass
class SynthSpec:
    journals: list[JournalSpec]
    corruption: list[CorruptionRule] = field(default_factory=list)
    seed: int = 0

    def __post_init__(self):
        if not self.journals:
            raise SpecError("spec needs at least one journal")

    def to_json(self) -> str:
        return json.dumps(
            {
                "journals": [j.to_dict() for j in self.journals],
                "corruption": [r.to_dict() for r in self.corruption],
                "seed": self.seed,
            },
            indent=1,
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "SynthSpec":
        try:
            data = json.loads(text)
            return cls(
                journals=[JournalSpec.from_dict(j) for j in data["journals"]],
                corruption=[
                    CorruptionRule.from_dict(r) for r in data.get("corruption", [])
                ],
                seed=int(data.get("seed", 0)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecError(f"bad corpus spec: {exc}") from exc


# ---------------------------------------------------------------------------
# Graph types
# ---------------------------------------------------------------------------


@dataclass
class SynthArticle:
    """Internal generation view of one article (index-addressed)."""

    index: int
    journal: str
    volume: int
    number: int
    year: int
    ordinal: int  # proleptic-Gregorian day ordinal of the publication date
    page_count: int
    doi: str

    def pub_date(self) -> PubDate:
        d = _date.fromordinal(self.ordinal)
        return PubDate(d.year, d.month, d.day)

    def to_record(self) -> ArticleRecord:
        return ArticleRecord(
            doi=self.doi,
            journal_title=self.journal,
            volume=str(self.volume),
            article_number=str(self.number),
            page_count=self.page_count,
            publication_date=self.pub_date(),
            title=f"Synthetic article {self.volume}-{self.number} of {self.journal}",
            source_format=SourceFormat.SYNTHETIC,
        )


@dataclass
class LogEntry:
    edge_index: int
    rule: RerouteKind
    original_target: str
    new_target: str


@dataclass
class GroundTruthGraph:
    spec: SynthSpec
    articles: list[SynthArticle]
    true_edges: list[tuple[str, str]]
    corrupted_edges: list[tuple[str, str]]
    corruption_log: list[LogEntry] = field(default_factory=list)
    unreroutable: list[LogEntry] = field(default_factory=list)

    def __post_init__(self):
        self._by_doi = {a.doi: a for a in self.articles}
        self._by_key = {(a.journal, a.volume, a.number): a for a in self.articles}

    def article(self, doi: str) -> SynthArticle:
        return self._by_doi[doi]

    def find(self, journal: str, volume: int, number: int) -> Optional[SynthArticle]:
        return self._by_key.get((journal, volume, number))

    def volume_articles(self, journal: str, volume: int) -> list[SynthArticle]:
        return [a for a in self.articles if a.journal == journal and a.volume == volume]

    def in_degrees(self, edges: Sequence[tuple[str, str]]) -> dict[str, int]:
        counts = {a.doi: 0 for a in self.articles}
        for _citing, cited in edges:
            counts[cited] += 1
        return counts

    def synthetic_counts(
        self, edges: Optional[Sequence[tuple[str, str]]] = None
    ) -> dict[str, CitationCount]:
        degrees = self.in_degrees(self.corrupted_edges if edges is None else edges)
        return {
            doi: CitationCount(doi, Source.SYNTHETIC, count, _EPOCH_TS)
            for doi, count in degrees.items()
        }


# ---------------------------------------------------------------------------
# Generation
# ---------------------------------------------------------------------------


def generate_corpus(spec: SynthSpec) -> GroundTruthGraph:
    """Articles plus true citation edges; corrupted_edges start as a copy.

    Attachment weight of an eligible target is ``(in-degree + 1) ** a``
    with the journal's exponent ``a``; exponent 0 is uniform. Weights are
    frozen while one citing article draws its references, and duplicate
    targets are redrawn up to eight times then dropped.
    """
    if not isinstance(spec, SynthSpec):
        raise SpecError("generate_corpus needs a SynthSpec")
    rng = SplitMix64(spec.seed)

    articles: list[SynthArticle] = []
    for journal in spec.journals:
        for volume in range(1, journal.volumes + 1):
            year = journal.year_of_volume(volume)
            start = _date(year, 1, 2).toordinal()
            number = 0
            for day_offset in range(journal.days_per_volume):
                for _ in range(rng.randint(*journal.articles_per_day)):
                    number += 1
                    articles.append(
                        SynthArticle(
                            index=len(articles),
                            journal=journal.name,
                            volume=volume,
                            number=number,
                            year=year,
                            ordinal=start + day_offset,
                            page_count=rng.randint(*journal.pdf_length),
                            doi=f"10.5555/{journal.slug}.{volume}.{number:05d}",
                        )
                    )

    journal_by_name = {j.name: j for j in spec.journals}
    timeline = sorted(range(len(articles)), key=lambda i: (articles[i].ordinal, i))
    ordinals = [articles[i].ordinal for i in timeline]

    edges: list[tuple[str, str]] = []
    indegree = [0] * len(articles)
    for citer_pos in timeline:
        citer = articles[citer_pos]
        journal = journal_by_name[citer.journal]
        hi = bisect_right(ordinals, citer.ordinal - 1)
        lo = 0
        if journal.citation_window_days is not None:
            lo = bisect_right(ordinals, citer.ordinal - journal.citation_window_days - 1)
        pool = timeline[lo:hi]

        n_refs = rng.randint(*journal.refs_per_article)
        if not pool or n_refs == 0:
            continue

        cumulative = None
        if journal.attachment_exponent != 0.0:
            weights = [
                _attachment_weight(indegree[i], journal.attachment_exponent)
                for i in pool
            ]
            cumulative = []
            running = 0
            for w in weights:
                running += w
                cumulative.append(running)

        chosen: set[int] = set()
        for _ in range(n_refs):
            if journal.external_citation_rate and rng.bernoulli(
                journal.external_citation_rate
            ):
                continue  # reference leaves the corpus
            target = None
            for _attempt in range(8):
                if cumulative is None:
                    picked = pool[rng.randbelow(len(pool))]
                else:
                    r = rng.randbelow(cumulative[-1])
                    picked = pool[bisect_right(cumulative, r)]
                if picked not in chosen:
                    target = picked
                    break
            if target is None:
                continue
            chosen.add(target)
            edges.append((citer.doi, articles[target].doi))

        for target in chosen:
            indegree[target] += 1

    return GroundTruthGraph(
        spec=spec,
        articles=articles,
        true_edges=edges,
        corrupted_edges=list(edges),
    )


def _attachment_weight(indegree: int, exponent: float) -> int:
    base = indegree + 1
    doubled = int(exponent * 2)
    whole, half = divmod(doubled, 2)
    if half:
        return math.isqrt((base ** (2 * whole + 1)) << (2 * _WEIGHT_SHIFT))
    return (base**whole) << _WEIGHT_SHIFT


# ---------------------------------------------------------------------------
# Corruption
# ---------------------------------------------------------------------------


def apply_corruption(
    graph: GroundTruthGraph, rules: Sequence[CorruptionRule], seed: int
) -> GroundTruthGraph:
    """Fill corrupted_edges by rerouting true edges per the rules.

    For every edge the trigger of *every* rule is drawn (fixed RNG
    consumption); the first rule that triggered and is active for the
    cited article's publication year is applied. A reroute whose target
    equals the original leaves no trace; one whose target does not exist
    leaves the edge intact and is logged as unreroutable.
    """
    rng = SplitMix64(seed)
    corrupted = list(graph.true_edges)
    log: list[LogEntry] = []
    dead: list[LogEntry] = []

    volumes_by_journal: dict[str, list[int]] = {}
    for article in graph.articles:
        vols = volumes_by_journal.setdefault(article.journal, [])
        if article.volume not in vols:
            vols.append(article.volume)

    for idx, (citing_doi, cited_doi) in enumerate(graph.true_edges):
        cited = graph.article(cited_doi)
        triggered = [rng.bernoulli(rule.probability) for rule in rules]
        rule = next(
            (
                r
                for r, hit in zip(rules, triggered)
                if hit and r.active_for(cited.year)
            ),
            None,
        )
        if rule is None:
            continue

        if rule.kind is RerouteKind.ARTICLE1:
            target = graph.find(cited.journal, cited.volume, 1)
        else:
            volume = cited.volume
            if rule.cross_volume_probability and rng.bernoulli(
                rule.cross_volume_probability
            ):
                others = [
                    v for v in volumes_by_journal[cited.journal] if v != cited.volume
                ]
                if others:
                    volume = others[rng.randbelow(len(others))]
            target = graph.find(cited.journal, volume, cited.page_count)

        if target is None:
            dead.append(LogEntry(idx, rule.kind, cited_doi, cited_doi))
            continue
        if target.doi == cited_doi:
            continue  # identity reroute, nothing changed
        corrupted[idx] = (citing_doi, target.doi)
        log.append(LogEntry(idx, rule.kind, cited_doi, target.doi))

    return GroundTruthGraph(
        spec=graph.spec,
        articles=graph.articles,
        true_edges=graph.true_edges,
        corrupted_edges=corrupted,
        corruption_log=log,
        unreroutable=dead,
    )


def replay_log(
    true_edges: Sequence[tuple[str, str]], log: Sequence[LogEntry]
) -> list[tuple[str, str]]:
    """Reapply a corruption log; must reproduce corrupted_edges exactly."""
    edges = list(true_edges)
    for entry in log:
        citing, cited = edges[entry.edge_index]
        if cited != entry.original_target:
            raise ValueError(
                f"log mismatch at edge {entry.edge_index}: "
                f"{cited} != {entry.original_target}"
            )
        edges[entry.edge_index] = (citing, entry.new_target)
    return edges


def build_corpus(spec: SynthSpec) -> GroundTruthGraph:
    """generate_corpus + apply_corruption with the spec's own rules.

    The corruption stream is seeded with spec.seed + 1 so generation and
    corruption stay independent but jointly reproducible.
    """
    graph = generate_corpus(spec)
    return apply_corruption(graph, spec.corruption, seed=spec.seed + 1)


# ---------------------------------------------------------------------------
# Distortion measurement
# ---------------------------------------------------------------------------


@dataclass
class DistortionReport:
    """True vs observed citation counts plus a simple 2-year journal metric.

    The metric for (journal, year Y) is: citations made in year Y to the
    journal's articles published in Y-1 or Y-2, divided by how many such
    articles there are. A crude Impact-Factor-shaped quantity; cross-year
    reroutes move it, same-year ones do not.
    """

    true_counts: dict[str, int]
    observed_counts: dict[str, int]
    true_metric: dict[tuple[str, int], float]
    observed_metric: dict[tuple[str, int], float]

    @property
    def total_true(self) -> int:
        return sum(self.true_counts.values())

    @property
    def total_observed(self) -> int:
        return sum(self.observed_counts.values())


def measure_distortion(graph: GroundTruthGraph) -> DistortionReport:
    true_counts = graph.in_degrees(graph.true_edges)
    observed_counts = graph.in_degrees(graph.corrupted_edges)
    return DistortionReport(
        true_counts=true_counts,
        observed_counts=observed_counts,
        true_metric=_two_year_metric(graph, graph.true_edges),
        observed_metric=_two_year_metric(graph, graph.corrupted_edges),
    )


def _two_year_metric(
    graph: GroundTruthGraph, edges: Sequence[tuple[str, str]]
) -> dict[tuple[str, int], float]:
    denominators: dict[tuple[str, int], int] = {}
    years_by_journal: dict[str, set[int]] = {}
    for article in graph.articles:
        years_by_journal.setdefault(article.journal, set()).add(article.year)
    for journal, years in years_by_journal.items():
        for year in years:
            eligible = sum(
                1
                for a in graph.articles
                if a.journal == journal and a.year in (year - 1, year - 2)
            )
            if eligible:
                denominators[(journal, year)] = eligible

    numerators: dict[tuple[str, int], int] = {key: 0 for key in denominators}
    for citing_doi, cited_doi in edges:
        citing = graph.article(citing_doi)
        cited = graph.article(cited_doi)
        key = (cited.journal, citing.year)
        if key in numerators and cited.year in (citing.year - 1, citing.year - 2):
            numerators[key] += 1

    return {key: numerators[key] / denominators[key] for key in denominators}


# ---------------------------------------------------------------------------
# Detector evaluation against ground truth
# ---------------------------------------------------------------------------


@dataclass
class DetectorEvaluation:
    o2_true_positives: int
    o2_false_positives: int
    o2_positives: int
    o1_flagged_volumes: set[tuple[str, int]]
    o1_positive_volumes: set[tuple[str, int]]
    anchor_z: dict[tuple[str, int], float]
    z_threshold: float

    @property
    def o2_precision(self) -> float:
        flagged = self.o2_true_positives + self.o2_false_positives
        return self.o2_true_positives / flagged if flagged else 1.0

    @property
    def o2_recall(self) -> float:
        if not self.o2_positives:
            return 1.0
        return self.o2_true_positives / self.o2_positives

    @property
    def o1_precision(self) -> float:
        if not self.o1_flagged_volumes:
            return 1.0
        hits = len(self.o1_flagged_volumes & self.o1_positive_volumes)
        return hits / len(self.o1_flagged_volumes)

    @property
    def o1_recall(self) -> float:
        if not self.o1_positive_volumes:
            return 1.0
        hits = len(self.o1_flagged_volumes & self.o1_positive_volumes)
        return hits / len(self.o1_positive_volumes)


def render_edge_reference(
    graph: GroundTruthGraph,
    edge_index: int,
    reroute_kinds: Optional[dict[int, RerouteKind]] = None,
) -> str:
    """The reference string a bibliography would print for one edge.

    Edges rerouted by the PDF-length mechanism print the defective
    ``Journal V(1):L`` shape (true volume, locator = PDF length);
    everything else prints the journal's recommended ``Journal V, X (Y)``.
    Bulk callers pass a prebuilt edge-index -> rule map.
    """
    from refaudit.formats.refstrings import render_reference
    from refaudit.records import LocatorKind

    _citing, cited_doi = graph.true_edges[edge_index]
    cited = graph.article(cited_doi)
    kinds = (
        reroute_kinds
        if reroute_kinds is not None
        else {entry.edge_index: entry.rule for entry in graph.corruption_log}
    )
    if kinds.get(edge_index) is RerouteKind.PDF_LENGTH:
        return render_reference(
            LocatorKind.ISSUE_COLON_LOCATOR,
            cited.journal,
            str(cited.volume),
            str(cited.page_count),
            issue="1",
        )
    return render_reference(
        LocatorKind.ARTICLE_NUMBER,
        cited.journal,
        str(cited.volume),
        str(cited.number),
        year=cited.year,
    )


def evaluate_detectors(
    graph: GroundTruthGraph,
    z_threshold: float = 3.0,
    min_cohort: int = 15,
) -> DetectorEvaluation:
    """Score the O.2 string detector and the O.1 anchor-z flag.

    O.2 is scored per edge: every edge's reference string is rendered
    (corrupted edges in the defective shape), parsed, and run through
    the locator detector with the true cited article and the wrongly
    credited one as resolution candidates. O.1 is scored per volume:
    a volume is flagged when its anchor's z exceeds the threshold, and
    truly positive when the log shows at least one ARTICLE1 reroute
    into it.
    """
    from refaudit.formats.refstrings import parse_reference_string
    from refaudit.rules import detect_o2
    from refaudit.stats import build_cohort, find_anchor, normalize_cohort

    o2_positive_edges = {
        e.edge_index
        for e in graph.corruption_log
        if e.rule is RerouteKind.PDF_LENGTH
    }
    reroute_kinds = {entry.edge_index: entry.rule for entry in graph.corruption_log}
    true_positives = 0
    false_positives = 0
    for idx in range(len(graph.true_edges)):
        rendered = render_edge_reference(graph, idx, reroute_kinds)
        ref = parse_reference_string(rendered)
        cited = graph.article(graph.true_edges[idx][1])
        candidates = [cited.to_record()]
        credited = graph.find(cited.journal, cited.volume, cited.page_count)
        if credited is not None and credited.doi != cited.doi:
            candidates.append(credited.to_record())
        flagged = bool(detect_o2(ref, candidates))
        if flagged and idx in o2_positive_edges:
            true_positives += 1
        elif flagged:
            false_positives += 1

    counts = graph.synthetic_counts()
    anchor_z: dict[tuple[str, int], float] = {}
    flagged_volumes: set[tuple[str, int]] = set()
    for journal_spec in graph.spec.journals:
        for volume in range(1, journal_spec.volumes + 1):
            members = graph.volume_articles(journal_spec.name, volume)
            records = [a.to_record() for a in members]
            try:
                anchor = find_anchor(records, str(volume))
                cohort = build_cohort(
                    anchor,
                    records,
                    min_size=min_cohort,
                    counts=counts,
                    journal=journal_spec.name,
                    volume_label=str(volume),
                )
                histogram = normalize_cohort(cohort)
            except Exception:  # volume too thin to judge — skip, not fail
                continue
            z = histogram.anchor_z[0]
            anchor_z[(journal_spec.name, volume)] = z
            if not histogram.degenerate and z > z_threshold:
                flagged_volumes.add((journal_spec.name, volume))

    positive_volumes: set[tuple[str, int]] = set()
    for entry in graph.corruption_log:
        if entry.rule is RerouteKind.ARTICLE1:
            target = graph.article(entry.new_target)
            positive_volumes.add((target.journal, target.volume))

    return DetectorEvaluation(
        o2_true_positives=true_positives,
        o2_false_positives=false_positives,
        o2_positives=len(o2_positive_edges),
        o1_flagged_volumes=flagged_volumes,
        o1_positive_volumes=positive_volumes & set(anchor_z),
        anchor_z=anchor_z,
        z_threshold=z_threshold,
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def corpus_to_dir(graph: GroundTruthGraph, directory: str | Path) -> Path:
    """Write articles.csv, true_edges.csv, corrupted_edges.csv,
    corruption_log.csv and spec.json. Byte-deterministic."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)

    rows = [
        (
            a.doi,
            a.journal,
            a.volume,
            a.number,
            a.pub_date().isoformat(),
            a.page_count,
        )
        for a in graph.articles
    ]
    _write_csv(
        out / "articles.csv",
        ("doi", "journal", "volume", "article_number", "date", "page_count"),
        rows,
    )
    _write_csv(out / "true_edges.csv", ("citing", "cited"), graph.true_edges)
    _write_csv(out / "corrupted_edges.csv", ("citing", "cited"), graph.corrupted_edges)
    log_rows = [
        (e.edge_index, e.rule.value, e.original_target, e.new_target, 1)
        for e in graph.corruption_log
    ] + [
        (e.edge_index, e.rule.value, e.original_target, e.new_target, 0)
        for e in graph.unreroutable
    ]
    log_rows.sort(key=lambda r: r[0])
    _write_csv(
        out / "corruption_log.csv",
        ("edge_index", "rule", "original_target", "new_target", "applied"),
        log_rows,
    )
    (out / "spec.json").write_text(graph.spec.to_json() + "\n", encoding="utf-8")
    return out


def _write_csv(path: Path, header: tuple, rows) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    path.write_text(buffer.getvalue(), encoding="utf-8")


# ---------------------------------------------------------------------------
# Benchmark spec
# ---------------------------------------------------------------------------


def make_benchmark_spec(
    seed: int,
    o1_probability: float = 0.3,
    active_years: Optional[tuple[int, int]] = None,
    o2_probability: float = 0.0,
    cross_volume_probability: float = 0.0,
) -> SynthSpec:
    """The desk-scale corpus the verification suite runs on.

    One journal, six single-day volumes (2020-2025), ~105 articles per
    volume-day cluster. Each volume's references reach exactly one year
    back (a 400-day window), so volumes 1-5 all receive a full year of
    incoming citations (~1100+ each) from structurally exchangeable
    citers; volume 6 exists only to cite volume 5. Uniform attachment
    keeps every article of a volume statistically identical, which is
    what makes anchors unremarkable on clean corpora and screamingly
    visible on corrupted ones.
    """
    rules = []
    if o1_probability > 0:
        rules.append(
            CorruptionRule(
                kind=RerouteKind.ARTICLE1,
                probability=o1_probability,
                active_years=active_years,
            )
        )
    if o2_probability > 0:
        rules.append(
            CorruptionRule(
                kind=RerouteKind.PDF_LENGTH,
                probability=o2_probability,
                active_years=active_years,
                cross_volume_probability=cross_volume_probability,
            )
        )
    return SynthSpec(
        journals=[
            JournalSpec(
                name="Synthetic Communications",
                volumes=6,
                first_year=2020,
                articles_per_day=(100, 110),
                pdf_length=(3, 30),
                refs_per_article=(11, 15),
                attachment_exponent=0.0,
                external_citation_rate=0.1,
                days_per_volume=1,
                citation_window_days=400,
            )
        ],
        corruption=rules,
        seed=seed,
    )

BENCHMARK_AUDITED_VOLUMES = 5  # volume 6 only supplies citations
