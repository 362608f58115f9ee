"""Static SVG 1.1 line charts of log10(v_t) versus round, no display server.

Rounds whose v_t is absent or non-positive cannot be placed on a log axis and
are skipped (the count is recorded in the chart's <desc>).
"""

from __future__ import annotations

import math
from pathlib import Path

WIDTH, HEIGHT = 800, 500
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 80, 30, 40, 55
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + k * step for k in range(count)]


def _fmt_tick(x: float) -> str:
    return f"{x:.4g}"


def plot_traces(series: list[tuple[str, list[int], list[float | None]]], path) -> None:
    """Write one chart; series is a list of (label, rounds, v_t) triples."""
    points = []
    dropped = 0
    for label, rounds, values in series:
        pts = []
        for t, v in zip(rounds, values):
            if v is None or not math.isfinite(v) or v <= 0.0:
                dropped += 1
                continue
            pts.append((t, math.log10(v)))
        points.append((label, pts))

    visible = [p for _, pts in points for p in pts]
    if visible:
        x_lo, x_hi = min(p[0] for p in visible), max(p[0] for p in visible)
        y_lo, y_hi = min(p[1] for p in visible), max(p[1] for p in visible)
    else:
        x_lo, x_hi, y_lo, y_hi = 0.0, 1.0, 0.0, 1.0
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5

    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def sx(x: float) -> float:
        return MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y: float) -> float:
        return MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"<desc>aggregate error trace; {dropped} non-positive/absent points omitted</desc>",
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]

    # axes and ticks
    x0, y0 = MARGIN_L, MARGIN_T + plot_h
    out.append(
        f'<path d="M {x0} {MARGIN_T} L {x0} {y0} L {MARGIN_L + plot_w} {y0}" '
        'stroke="black" fill="none" stroke-width="1"/>'
    )
    for xv in _ticks(x_lo, x_hi):
        px = sx(xv)
        out.append(f'<line x1="{px:.2f}" y1="{y0}" x2="{px:.2f}" y2="{y0 + 5}" stroke="black"/>')
        out.append(
            f'<text x="{px:.2f}" y="{y0 + 20}" font-size="12" text-anchor="middle" '
            f'font-family="sans-serif">{_fmt_tick(xv)}</text>'
        )
    for yv in _ticks(y_lo, y_hi):
        py = sy(yv)
        out.append(f'<line x1="{x0 - 5}" y1="{py:.2f}" x2="{x0}" y2="{py:.2f}" stroke="black"/>')
        out.append(
            f'<text x="{x0 - 8}" y="{py + 4:.2f}" font-size="12" text-anchor="end" '
            f'font-family="sans-serif">{_fmt_tick(yv)}</text>'
        )
    out.append(
        f'<text x="{MARGIN_L + plot_w / 2:.2f}" y="{HEIGHT - 12}" font-size="14" '
        'text-anchor="middle" font-family="sans-serif">round t</text>'
    )
    out.append(
        f'<text x="18" y="{MARGIN_T + plot_h / 2:.2f}" font-size="14" text-anchor="middle" '
        f'font-family="sans-serif" transform="rotate(-90 18 {MARGIN_T + plot_h / 2:.2f})">'
        "log10 of aggregate squared error</text>"
    )

    for k, (label, pts) in enumerate(points):
        color = PALETTE[k % len(PALETTE)]
        if len(pts) >= 2:
            coords = " ".join(f"{sx(t):.2f},{sy(v):.2f}" for t, v in pts)
            out.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
        elif len(pts) == 1:
            t, v = pts[0]
            out.append(f'<circle cx="{sx(t):.2f}" cy="{sy(v):.2f}" r="3" fill="{color}"/>')

    if len(points) > 1:
        ly = MARGIN_T + 10
        for k, (label, _) in enumerate(points):
            color = PALETTE[k % len(PALETTE)]
            out.append(
                f'<line x1="{MARGIN_L + plot_w - 150}" y1="{ly}" x2="{MARGIN_L + plot_w - 120}" '
                f'y2="{ly}" stroke="{color}" stroke-width="1.5"/>'
            )
            out.append(
                f'<text x="{MARGIN_L + plot_w - 114}" y="{ly + 4}" font-size="12" '
                f'font-family="sans-serif">{_escape(label)}</text>'
            )
            ly += 18

    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n")


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
