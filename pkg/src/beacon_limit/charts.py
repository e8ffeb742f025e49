"""
Standalone SVG line charts for the elevation sweeps.

No plotting dependency: charts are built as polylines with axis ticks and a
legend, and reference no external resources. Output is deterministic.
"""

import logging
import math
from pathlib import Path
from typing import List, Sequence, Tuple, Union

from .models import ChartSeries, ChartSpec, DomainError, SweepPoint

logger = logging.getLogger(__name__)

WIDTH = 760
HEIGHT = 440
MARGIN_LEFT = 80
MARGIN_RIGHT = 170
MARGIN_TOP = 50
MARGIN_BOTTOM = 60
TICKS = 5

COLORS = ["#000000", "#1f77b4", "#d62728", "#2ca02c"]


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _prepare(spec: ChartSpec) -> List[Tuple[ChartSeries, List[float]]]:
    """Clip, check finiteness and apply the log transform to every series."""
    prepared = []
    for series in spec.series:
        values = []
        for y in series.y:
            if spec.y_clip is not None and not math.isnan(y):
                y = min(y, spec.y_clip)
            if not math.isfinite(y):
                raise DomainError(f"series '{series.label}' has a non-finite value after clipping")
            if spec.log_y:
                if y <= 0:
                    raise DomainError(f"series '{series.label}' has a non-positive value on a log axis")
                y = math.log10(y)
            values.append(y)
        prepared.append((series, values))
    return prepared


def _span(values: Sequence[float], floor_at_zero: bool) -> Tuple[float, float]:
    low, high = min(values), max(values)
    if floor_at_zero:
        low = min(low, 0.0)
    if high - low <= 0:
        high = low + 1.0
    return low, high


def render_svg(spec: ChartSpec) -> str:
    """Render a chart to an SVG document string."""
    prepared = _prepare(spec)
    xs = [x for series, _ in prepared for x in series.x]
    ys = [y for _, values in prepared for y in values]
    if not xs:
        raise DomainError(f"chart '{spec.title}' has no data")
    for x in xs:
        if not math.isfinite(x):
            raise DomainError(f"chart '{spec.title}' has a non-finite x value")

    x_low, x_high = _span(xs, floor_at_zero=False)
    y_low, y_high = _span(ys, floor_at_zero=not spec.log_y)
    plot_left, plot_right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    plot_top, plot_bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM

    def x_px(x: float) -> float:
        return plot_left + (x - x_low) / (x_high - x_low) * (plot_right - plot_left)

    def y_px(y: float) -> float:
        return plot_bottom - (y - y_low) / (y_high - y_low) * (plot_bottom - plot_top)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"<title>{_escape(spec.title)}</title>",
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:.1f}" y="28" text-anchor="middle" font-size="16" '
        f'font-family="sans-serif">{_escape(spec.title)}</text>',
    ]

    for i in range(TICKS + 1):
        y_value = y_low + (y_high - y_low) * i / TICKS
        y = y_px(y_value)
        label = f"1e{y_value:.1f}" if spec.log_y else f"{y_value:.4g}"
        lines.append(f'<line x1="{plot_left}" y1="{y:.2f}" x2="{plot_right}" y2="{y:.2f}" '
                     f'stroke="#dddddd" stroke-width="1"/>')
        lines.append(f'<text x="{plot_left - 8}" y="{y + 4:.2f}" text-anchor="end" '
                     f'font-size="11" font-family="sans-serif">{label}</text>')
        x_value = x_low + (x_high - x_low) * i / TICKS
        x = x_px(x_value)
        lines.append(f'<line x1="{x:.2f}" y1="{plot_bottom}" x2="{x:.2f}" y2="{plot_bottom + 5}" '
                     f'stroke="#000000" stroke-width="1"/>')
        lines.append(f'<text x="{x:.2f}" y="{plot_bottom + 20}" text-anchor="middle" '
                     f'font-size="11" font-family="sans-serif">{x_value:.3g}</text>')

    lines.append(f'<line x1="{plot_left}" y1="{plot_bottom}" x2="{plot_right}" y2="{plot_bottom}" '
                 f'stroke="#000000" stroke-width="1.5"/>')
    lines.append(f'<line x1="{plot_left}" y1="{plot_top}" x2="{plot_left}" y2="{plot_bottom}" '
                 f'stroke="#000000" stroke-width="1.5"/>')
    lines.append(f'<text x="{(plot_left + plot_right) / 2:.1f}" y="{HEIGHT - 15}" '
                 f'text-anchor="middle" font-size="13" font-family="sans-serif">'
                 f'{_escape(spec.x_label)}</text>')
    lines.append(f'<text x="20" y="{(plot_top + plot_bottom) / 2:.1f}" text-anchor="middle" '
                 f'font-size="13" font-family="sans-serif" '
                 f'transform="rotate(-90 20 {(plot_top + plot_bottom) / 2:.1f})">'
                 f'{_escape(spec.y_label)}</text>')

    legend_x = plot_right + 20
    for idx, (series, values) in enumerate(prepared):
        color = COLORS[idx % len(COLORS)]
        dash = ' stroke-dasharray="6 4"' if series.dashed else ""
        points = " ".join(f"{x_px(x):.2f},{y_px(y):.2f}" for x, y in zip(series.x, values))
        lines.append(f'<polyline fill="none" stroke="{color}" stroke-width="2"{dash} '
                     f'points="{points}"/>')
        legend_y = plot_top + 20 + idx * 22
        lines.append(f'<line x1="{legend_x}" y1="{legend_y}" x2="{legend_x + 28}" y2="{legend_y}" '
                     f'stroke="{color}" stroke-width="2"{dash}/>')
        lines.append(f'<text x="{legend_x + 34}" y="{legend_y + 4}" font-size="12" '
                     f'font-family="sans-serif">{_escape(series.label)}</text>')

    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def sweep_chart(points: Sequence[SweepPoint], kind: str, pass_time: float, extra_loss: float) -> ChartSpec:
    """
    Chart of a TTR or ATW sweep.

    JDR curves are solid and SSR curves dashed. TTR curves show the
    effective (offset) reading time clipped at the pass duration.
    """
    x = tuple(p.start_elevation for p in points)
    if kind == "ttr":
        series = [
            ChartSeries("JDR", x, tuple(p.ttr_effective_quantum for p in points)),
            ChartSeries("SSR", x, tuple(p.ttr_effective_classical for p in points), dashed=True),
        ]
        return ChartSpec(
            title=f"Time to read, {extra_loss:g} dB extra loss",
            x_label="Start elevation (rad)",
            y_label="Effective TTR (s)",
            series=series,
            y_clip=pass_time,
        )
    if kind == "atw":
        series = [
            ChartSeries("JDR", x, tuple(p.atw_quantum for p in points)),
            ChartSeries("SSR", x, tuple(p.atw_classical for p in points), dashed=True),
        ]
        return ChartSpec(
            title=f"Availability time window, {extra_loss:g} dB extra loss",
            x_label="Start elevation (rad)",
            y_label="ATW (s)",
            series=series,
        )
    raise DomainError(f"Unsupported sweep chart kind: {kind}")


def write_svg(spec: ChartSpec, path: Union[str, Path]) -> None:
    """Render a chart and write it to path."""
    path = Path(path)
    try:
        path.write_text(render_svg(spec), encoding="utf-8")
    except OSError as e:
        raise OSError(f"cannot write chart to {path}: {e.strerror or e}") from e
    logger.info(f"Wrote chart to {path}")
