"""Rule-based misattribution detectors.

Four rules, each named for the failure mode it catches:

  I1  RIS says "article starts at page N, no end page" while the API says
      "starts at page 1, ends at the PDF length" for the same article.
  I2  the article number is absent from a JSON/JSONP/PAM API payload.
  O2  a reference's locator is actually the cited article's PDF page
      count, crediting whatever article carries that number.
  O3  a reference's link targets disagree with its own title/journal.

All detectors are pure and deterministic: identical inputs produce
identical finding lists, ordered by rule then DOI.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from refaudit.errors import InsufficientFormats, MismatchedInput
from refaudit.records import (
    ArticleRecord,
    FormatBundle,
    LocatorKind,
    ParsedReference,
    SourceFormat,
)


class Rule(str, Enum):
    I1 = "I1"
    I2 = "I2"
    O2 = "O2"
    O3 = "O3"


class Severity(str, Enum):
    INFO = "Info"
    SUSPECT = "Suspect"
    CONFIRMED = "Confirmed"


# Keys that legitimately hold small numbers and therefore collide with
# article-number tokens without implying the number is present.
_COLLISION_KEYS = {
    "startingpage",
    "endingpage",
    "number",
    "issue",
    "volume",
    "pagecount",
    "start_page",
    "end_page",
}
# Keys that would actually carry an article number if the payload had one.
_ARTICLE_NUMBER_KEYS = {
    "articlenumber",
    "article-number",
    "article_number",
    "elocationid",
    "elocation-id",
}

_JSONP_RE = re.compile(r"^\s*[\w$.]+\s*\((.*)\)\s*;?\s*$", re.DOTALL)


@dataclass
class AnomalyFinding:
    """One detected issue with its evidence trail."""

    rule: Rule
    doi: str
    severity: Severity
    evidence: list[tuple[str, str]]
    related_doi: Optional[str] = None

    def __post_init__(self):
        if not self.evidence:
            raise ValueError("a finding must carry evidence")


@dataclass
class ConsistencyReport:
    """Cross-format field comparison for one article."""

    doi: str
    fields_compared: list[tuple[str, list[tuple[str, Optional[str]]]]]
    conflicts: list[str]
    findings: list[AnomalyFinding] = field(default_factory=list)


def sort_findings(findings: list[AnomalyFinding]) -> list[AnomalyFinding]:
    return sorted(findings, key=lambda f: (f.rule.value, f.doi, f.severity.value))


# ---------------------------------------------------------------------------
# I.1 — RIS / API page-field contradiction
# ---------------------------------------------------------------------------


def detect_i1(ris: ArticleRecord, api: ArticleRecord) -> list[AnomalyFinding]:
    """Compare the RIS and publisher-JSON views of one article.

    Full signature (both sides) is Confirmed; one side alone is Suspect.
    """
    if ris.doi != api.doi:
        raise MismatchedInput(f"DOI mismatch: {ris.doi} vs {api.doi}")

    ris_side = (
        ris.end_page is None
        and ris.start_page is not None
        and ris.start_page != "1"
    )
    api_side = api.start_page == "1" and api.end_page is not None

    if not ris_side and not api_side:
        return []

    severity = Severity.CONFIRMED if (ris_side and api_side) else Severity.SUSPECT
    evidence = [
        ("ris.start_page", ris.start_page or "(absent)"),
        ("ris.end_page", ris.end_page or "(absent)"),
        ("api.start_page", api.start_page or "(absent)"),
        ("api.end_page", api.end_page or "(absent)"),
    ]
    return [AnomalyFinding(Rule.I1, ris.doi, severity, evidence)]


# ---------------------------------------------------------------------------
# I.2 — article number missing from API payloads
# ---------------------------------------------------------------------------


def detect_i2(
    raw_payloads: Sequence[tuple[SourceFormat | str, str]],
    true_article_number: str,
    doi: str = "",
) -> list[AnomalyFinding]:
    """Scan raw payloads for the true article number.

    JATS payloads are exempt (that format does carry the number). For
    JSON payloads the number must appear as an actual field value: a
    token that only shows up as the value of a page/issue/volume field is
    a collision and downgrades the finding to Suspect instead of
    Confirmed. Non-JSON payloads (PAM etc.) get a standalone-token scan.
    """
    if not true_article_number:
        raise ValueError("true_article_number must be non-empty")

    findings = []
    for fmt, raw in raw_payloads:
        fmt_name = fmt.value if isinstance(fmt, SourceFormat) else str(fmt)
        if fmt_name == SourceFormat.JATS.value:
            continue
        verdict = _payload_verdict(raw, true_article_number)
        if verdict is None:
            continue
        findings.append(
            AnomalyFinding(
                Rule.I2,
                doi,
                verdict,
                evidence=[
                    ("format", fmt_name),
                    ("article_number", true_article_number),
                ],
            )
        )
    return sort_findings(findings)


def _payload_verdict(raw: str, token: str) -> Optional[Severity]:
    """None = number present; Confirmed = absent; Suspect = collisions only."""
    parsed = _parse_json_maybe_jsonp(raw)
    if parsed is None:
        # Not JSON: best-effort standalone-token scan.
        pattern = rf"(?<!\w){re.escape(token)}(?!\w)"
        return None if re.search(pattern, raw) else Severity.CONFIRMED

    hit_keys: list[str] = []
    _collect_value_keys(parsed, token, hit_keys)
    if not hit_keys:
        return Severity.CONFIRMED
    normalized = {k.lower().replace("-", "").replace("_", "") for k in hit_keys}
    article_keys = {k.replace("-", "").replace("_", "") for k in _ARTICLE_NUMBER_KEYS}
    if normalized & article_keys:
        return None
    return Severity.SUSPECT


def _parse_json_maybe_jsonp(raw: str):
    for candidate in (raw, _strip_jsonp(raw)):
        if candidate is None:
            continue
        try:
            return json.loads(candidate)
        except (TypeError, ValueError):
            continue
    return None


def _strip_jsonp(raw: str) -> Optional[str]:
    m = _JSONP_RE.match(raw)
    return m.group(1) if m else None


def _collect_value_keys(node, token: str, hits: list[str], key: str = "") -> None:
    if isinstance(node, dict):
        for k, v in node.items():
            _collect_value_keys(v, token, hits, str(k))
    elif isinstance(node, list):
        for item in node:
            _collect_value_keys(item, token, hits, key)
    elif isinstance(node, (str, int)):
        if str(node) == token and key:
            hits.append(key)


# ---------------------------------------------------------------------------
# O.2 — locator is the PDF length, not the article number
# ---------------------------------------------------------------------------


def detect_o2(
    ref: ParsedReference, cited_candidates: Sequence[ArticleRecord]
) -> list[AnomalyFinding]:
    """Flag references whose locator equals a candidate's PDF page count.

    Only fires for the ``Journal V(1):L`` shapes, and never when the
    locator actually equals the candidate's article number. The wrongly
    credited article (number == locator in the referenced volume) is
    resolved to ``related_doi`` when it is among the candidates.
    """
    if ref.locator_kind is not LocatorKind.ISSUE_COLON_LOCATOR:
        return []
    if not ref.locator or not ref.locator.isdigit():
        return []
    length = int(ref.locator)

    credited = None
    for candidate in cited_candidates:
        if (
            candidate.article_number == ref.locator
            and (ref.volume is None or candidate.volume == ref.volume)
        ):
            credited = candidate
            break

    findings = []
    seen: set[str] = set()
    for candidate in cited_candidates:
        if candidate.page_count != length:
            continue
        if candidate.article_number is None:
            continue
        if candidate.article_number == ref.locator:
            continue
        if candidate.doi in seen:
            continue
        seen.add(candidate.doi)
        evidence = [
            ("locator", ref.locator),
            ("pdf_length", str(candidate.page_count)),
            ("true_article_number", candidate.article_number),
            ("referenced_volume", ref.volume or "(absent)"),
            ("reference", ref.raw),
        ]
        if credited is None:
            evidence.append(("related_doi", "unresolvable"))
        findings.append(
            AnomalyFinding(
                Rule.O2,
                candidate.doi,
                Severity.CONFIRMED,
                evidence,
                related_doi=credited.doi if credited else None,
            )
        )
    return sort_findings(findings)


# ---------------------------------------------------------------------------
# O.3 — reference text disagrees with its link targets
# ---------------------------------------------------------------------------


def detect_o3(
    ref_title: str,
    ref_journal: str,
    link_targets: Sequence[ArticleRecord],
) -> list[AnomalyFinding]:
    """Check every link target against the reference's own title/journal.

    All targets failing the title check is Confirmed; anything less
    (journal-only disagreement, or a mix) is Suspect.
    """
    if not link_targets:
        return []

    title_mismatches = []
    any_issue = False
    evidence: list[tuple[str, str]] = [("ref_title", ref_title)]
    for target in link_targets:
        similarity = title_jaccard(ref_title, target.title)
        title_bad = similarity < 0.5
        journal_bad = bool(
            ref_journal
            and target.journal_title
            and _norm_journal(ref_journal) != _norm_journal(target.journal_title)
        )
        title_mismatches.append(title_bad)
        if title_bad or journal_bad:
            any_issue = True
        evidence.append(
            (
                f"target:{target.doi}",
                f"title={target.title!r} journal={target.journal_title!r} "
                f"jaccard={similarity:.2f}",
            )
        )

    if not any_issue:
        return []
    severity = Severity.CONFIRMED if all(title_mismatches) else Severity.SUSPECT
    return [AnomalyFinding(Rule.O3, link_targets[0].doi, severity, evidence)]


def title_jaccard(a: str, b: str) -> float:
    """Jaccard similarity over lowercased alphanumeric tokens."""
    ta, tb = _tokens(a), _tokens(b)
    if not ta and not tb:
        return 1.0
    if not ta or not tb:
        return 0.0
    return len(ta & tb) / len(ta | tb)


def _tokens(text: str) -> set[str]:
    return set(re.findall(r"[a-z0-9]+", text.lower()))


def _norm_journal(name: str) -> str:
    return " ".join(re.findall(r"[a-z0-9]+", name.lower()))


# ---------------------------------------------------------------------------
# Cross-format consistency
# ---------------------------------------------------------------------------

_COMPARED_FIELDS = ("volume", "issue", "start_page", "end_page", "article_number")
_FORMAT_ORDER = list(SourceFormat)


def cross_format_consistency(bundle: FormatBundle) -> ConsistencyReport:
    """Compare field values across formats and run the I.1/I.2 detectors.

    Comparison semantics: a format only participates in a field when it
    makes a claim about it. Absence is a claim for the page fields
    (a RIS record with SP but no EP asserts "no end page") but not for
    the others, and the publisher JSON can never claim an article number.
    """
    if len(bundle.per_format) < 2:
        raise InsufficientFormats("need at least two formats to compare")

    formats = sorted(bundle.per_format, key=_FORMAT_ORDER.index)
    fields_compared = []
    conflicts = []
    for field_name in _COMPARED_FIELDS:
        values: list[tuple[str, Optional[str]]] = []
        claims: list[Optional[str]] = []
        for fmt in formats:
            record, _raw = bundle.per_format[fmt]
            value = getattr(record, field_name)
            values.append((fmt.value, value))
            if _makes_claim(record, fmt, field_name):
                claims.append(value)
        fields_compared.append((field_name, values))
        distinct = set(claims)
        if len(distinct) >= 2 and distinct != {None}:
            conflicts.append(field_name)

    findings: list[AnomalyFinding] = []

    ris = bundle.per_format.get(SourceFormat.RIS)
    api = bundle.per_format.get(SourceFormat.PUBLISHER_JSON)
    if ris and api:
        findings.extend(detect_i1(ris[0], api[0]))

    true_number = _true_article_number(bundle)
    if true_number and api:
        payloads = [(SourceFormat.PUBLISHER_JSON, api[1])]
        findings.extend(detect_i2(payloads, true_number, doi=bundle.doi))

    return ConsistencyReport(
        doi=bundle.doi,
        fields_compared=fields_compared,
        conflicts=conflicts,
        findings=sort_findings(findings),
    )


def _makes_claim(record: ArticleRecord, fmt: SourceFormat, field_name: str) -> bool:
    if field_name in ("start_page", "end_page"):
        return record.start_page is not None or record.end_page is not None
    if field_name == "article_number":
        if fmt is SourceFormat.PUBLISHER_JSON:
            return False  # the format has no way to say it
        return record.article_number is not None
    return getattr(record, field_name) is not None


def _true_article_number(bundle: FormatBundle) -> Optional[str]:
    for fmt in (SourceFormat.JATS, SourceFormat.CROSSREF_WORK):
        entry = bundle.per_format.get(fmt)
        if entry and entry[0].article_number:
            return entry[0].article_number
    return None


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def finding_to_dict(finding: AnomalyFinding) -> dict:
    return {
        "rule": finding.rule.value,
        "doi": finding.doi,
        "severity": finding.severity.value,
        "related_doi": finding.related_doi,
        "evidence": [[label, text] for label, text in finding.evidence],
    }


def findings_to_jsonl(findings: Sequence[AnomalyFinding]) -> str:
    """Line-delimited JSON, one finding per line, deterministic ordering."""
    lines = [
        json.dumps(finding_to_dict(f), sort_keys=True)
        for f in sort_findings(list(findings))
    ]
    return "\n".join(lines) + ("\n" if lines else "")
