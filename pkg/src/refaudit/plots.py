"""SVG emitters for histogram and rank CSVs.

Plain string-built SVG: text output, diff-able, byte-identical for
identical input, no plotting dependency. Anchors are drawn as dashed
red vertical lines over the comparison data, one line per anchor.

Input is the CSV emitted by :mod:`refaudit.stats`:
  histogram: ``label,z,is_anchor``
  rank:      ``label,rank,count,is_anchor``
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path

WIDTH, HEIGHT = 640, 400
MARGIN = 48
ANCHOR_STYLE = 'stroke="#cc2222" stroke-width="1.5" stroke-dasharray="6,4"'


def render_histogram_svg(csv_text: str, bin_width: float = 0.25) -> str:
    """Binned bar chart of comparison z-values with anchor marker lines."""
    z_values, anchors = _read_histogram_csv(csv_text)
    if not z_values and not anchors:
        return _empty_svg("no data")

    everything = z_values + anchors
    lo = math.floor(min(everything) / bin_width) * bin_width
    hi = math.ceil(max(everything) / bin_width) * bin_width
    if hi <= lo:
        hi = lo + bin_width
    n_bins = max(1, round((hi - lo) / bin_width))
    bins = [0] * n_bins
    for z in z_values:
        index = min(int((z - lo) / bin_width), n_bins - 1)
        bins[index] += 1
    peak = max(max(bins), 1)

    parts = [_svg_open(), _axes("z (normalized citation count)", "articles")]
    plot_w, plot_h = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN
    for i, count in enumerate(bins):
        if count == 0:
            continue
        x = MARGIN + plot_w * i / n_bins
        bar_h = plot_h * count / peak
        parts.append(
            f'<rect x="{_f(x)}" y="{_f(HEIGHT - MARGIN - bar_h)}" '
            f'width="{_f(plot_w / n_bins)}" height="{_f(bar_h)}" '
            'fill="#4477aa" stroke="#ffffff" stroke-width="0.5"/>'
        )
    for z in anchors:
        x = MARGIN + plot_w * (z - lo) / (hi - lo)
        parts.append(
            f'<line x1="{_f(x)}" y1="{MARGIN}" x2="{_f(x)}" '
            f'y2="{HEIGHT - MARGIN}" {ANCHOR_STYLE}/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_rank_svg(csv_text: str, log_log: bool = False) -> str:
    """Count-vs-rank curve with anchor ranks marked."""
    rows = _read_rank_csv(csv_text)
    if not rows:
        return _empty_svg("no data")
    total = len(rows)
    peak = max(count for _rank, count, _is_anchor in rows)

    def x_of(rank: int) -> float:
        if log_log:
            return MARGIN + (WIDTH - 2 * MARGIN) * math.log10(rank) / max(
                math.log10(total), 1e-9
            )
        return MARGIN + (WIDTH - 2 * MARGIN) * (rank - 1) / max(total - 1, 1)

    def y_of(count: int) -> float:
        if log_log:
            top = math.log10(max(peak, 1) + 1)
            return HEIGHT - MARGIN - (HEIGHT - 2 * MARGIN) * math.log10(count + 1) / max(
                top, 1e-9
            )
        return HEIGHT - MARGIN - (HEIGHT - 2 * MARGIN) * count / max(peak, 1)

    points = " ".join(
        f"{_f(x_of(rank))},{_f(y_of(count))}" for rank, count, _ in rows
    )
    parts = [
        _svg_open(),
        _axes(
            "rank (log)" if log_log else "rank",
            "citations (log)" if log_log else "citations",
        ),
        f'<polyline points="{points}" fill="none" stroke="#4477aa" stroke-width="1.5"/>',
    ]
    for rank, _count, is_anchor in rows:
        if is_anchor:
            x = x_of(rank)
            parts.append(
                f'<line x1="{_f(x)}" y1="{MARGIN}" x2="{_f(x)}" '
                f'y2="{HEIGHT - MARGIN}" {ANCHOR_STYLE}/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_plots(csv_path: str | Path, out_dir: str | Path) -> list[Path]:
    """Render a stats CSV into SVG file(s); kind is sniffed from the header.

    Histogram CSVs produce one SVG; rank CSVs produce a linear and a
    log-log variant.
    """
    csv_path = Path(csv_path)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    text = csv_path.read_text(encoding="utf-8")
    header = text.splitlines()[0] if text.strip() else ""
    stem = csv_path.stem
    written = []
    if header.startswith("label,z"):
        path = out_dir / f"{stem}.svg"
        path.write_text(render_histogram_svg(text), encoding="utf-8")
        written.append(path)
    elif header.startswith("label,rank"):
        linear = out_dir / f"{stem}_linear.svg"
        linear.write_text(render_rank_svg(text, log_log=False), encoding="utf-8")
        loglog = out_dir / f"{stem}_loglog.svg"
        loglog.write_text(render_rank_svg(text, log_log=True), encoding="utf-8")
        written.extend([linear, loglog])
    else:
        raise ValueError(f"unrecognized CSV header: {header!r}")
    return written


def _read_histogram_csv(text: str) -> tuple[list[float], list[float]]:
    z_values, anchors = [], []
    for row in csv.DictReader(io.StringIO(text)):
        (anchors if row["is_anchor"] == "1" else z_values).append(float(row["z"]))
    return z_values, anchors


def _read_rank_csv(text: str) -> list[tuple[int, int, bool]]:
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        rows.append((int(row["rank"]), int(row["count"]), row["is_anchor"] == "1"))
    rows.sort(key=lambda r: r[0])
    return rows


def _svg_open() -> str:
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">'
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>'
    )


def _axes(x_label: str, y_label: str) -> str:
    return (
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="#222222" stroke-width="1"/>'
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="#222222" stroke-width="1"/>'
        f'<text x="{WIDTH // 2}" y="{HEIGHT - 12}" font-size="12" '
        f'text-anchor="middle" font-family="sans-serif">{x_label}</text>'
        f'<text x="14" y="{HEIGHT // 2}" font-size="12" text-anchor="middle" '
        f'font-family="sans-serif" transform="rotate(-90 14 {HEIGHT // 2})">{y_label}</text>'
    )


def _empty_svg(note: str) -> str:
    return (
        _svg_open()
        + f'<text x="{WIDTH // 2}" y="{HEIGHT // 2}" font-size="14" '
        f'text-anchor="middle" font-family="sans-serif">{note}</text></svg>\n'
    )


def _f(value: float) -> str:
    return format(value, ".2f")
