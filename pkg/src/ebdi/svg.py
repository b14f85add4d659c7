"""Minimal deterministic SVG scatter plots.

The quadrant plot needs only circles, lines, and text, and its bytes must be
reproducible run-to-run, so the markup is emitted directly instead of going
through a plotting library (those embed creation timestamps and generated
ids). Element classes are stable so the output is machine-checkable:
``point`` circles, ``point-label`` texts, and exactly two ``threshold`` lines.
"""

from __future__ import annotations

from typing import Mapping, Sequence
from xml.sax.saxutils import escape

WIDTH = 880
HEIGHT = 640
MARGIN_LEFT = 70
MARGIN_RIGHT = 30
MARGIN_TOP = 40
MARGIN_BOTTOM = 60
N_TICKS = 5


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _axis_range(values: Sequence[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if lo == hi:
        lo, hi = lo - 1.0, hi + 1.0
    pad = 0.05 * (hi - lo)
    padded_lo = lo - pad
    if lo >= 0.0 > padded_lo:
        padded_lo = 0.0  # indicator values are non-negative; keep the axis so
    return padded_lo, hi + pad


class _Scale:
    def __init__(self, lo: float, hi: float, pix_lo: float, pix_hi: float):
        self.lo, self.hi = lo, hi
        self.pix_lo, self.pix_hi = pix_lo, pix_hi

    def __call__(self, value: float) -> float:
        frac = (value - self.lo) / (self.hi - self.lo)
        return self.pix_lo + frac * (self.pix_hi - self.pix_lo)

    def ticks(self, n: int) -> list[float]:
        return [self.lo + i * (self.hi - self.lo) / (n - 1) for i in range(n)]


def scatter_svg(
    points: Sequence[tuple[str, float, float]],
    x_threshold: float,
    y_threshold: float,
    x_label: str,
    y_label: str,
    quadrant_labels: Mapping[str, str] | None = None,
    title: str | None = None,
) -> str:
    """Scatter plot with one point per unit and two median threshold lines.

    ``points`` are (label, x, y) triples; the x axis carries the cited
    dimension and the y axis the citing dimension. ``quadrant_labels`` may
    name the four regions (keys top_left, top_right, bottom_left,
    bottom_right) that the threshold lines cut out.
    """
    points = sorted(points)
    xs = [x for _, x, _ in points] + [x_threshold]
    ys = [y for _, _, y in points] + [y_threshold]
    x_lo, x_hi = _axis_range(xs)
    y_lo, y_hi = _axis_range(ys)
    sx = _Scale(x_lo, x_hi, MARGIN_LEFT, WIDTH - MARGIN_RIGHT)
    sy = _Scale(y_lo, y_hi, HEIGHT - MARGIN_BOTTOM, MARGIN_TOP)  # y grows upward

    left, right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    top, bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM

    out: list[str] = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">'
    )
    if title:
        out.append(
            f'<text class="title" x="{_fmt(WIDTH / 2)}" y="24" text-anchor="middle" '
            f'font-size="16">{escape(title)}</text>'
        )

    # frame and axes
    out.append(
        f'<rect class="plot-area" x="{left}" y="{top}" width="{right - left}" '
        f'height="{bottom - top}" fill="none" stroke="#444444" stroke-width="1"/>'
    )
    for tick in sx.ticks(N_TICKS):
        px = sx(tick)
        out.append(
            f'<line class="tick" x1="{_fmt(px)}" y1="{bottom}" x2="{_fmt(px)}" '
            f'y2="{bottom + 5}" stroke="#444444" stroke-width="1"/>'
        )
        out.append(
            f'<text class="tick-label" x="{_fmt(px)}" y="{bottom + 18}" '
            f'text-anchor="middle" font-size="11">{tick:.3g}</text>'
        )
    for tick in sy.ticks(N_TICKS):
        py = sy(tick)
        out.append(
            f'<line class="tick" x1="{left - 5}" y1="{_fmt(py)}" x2="{left}" '
            f'y2="{_fmt(py)}" stroke="#444444" stroke-width="1"/>'
        )
        out.append(
            f'<text class="tick-label" x="{left - 8}" y="{_fmt(py + 4)}" '
            f'text-anchor="end" font-size="11">{tick:.3g}</text>'
        )
    out.append(
        f'<text class="axis-label" x="{_fmt((left + right) / 2)}" y="{HEIGHT - 16}" '
        f'text-anchor="middle" font-size="13">{escape(x_label)}</text>'
    )
    out.append(
        f'<text class="axis-label" x="18" y="{_fmt((top + bottom) / 2)}" text-anchor="middle" '
        f'font-size="13" transform="rotate(-90 18 {_fmt((top + bottom) / 2)})">{escape(y_label)}</text>'
    )

    # the two median threshold lines
    tx, ty = sx(x_threshold), sy(y_threshold)
    out.append(
        f'<line class="threshold" x1="{_fmt(tx)}" y1="{top}" x2="{_fmt(tx)}" y2="{bottom}" '
        f'stroke="#b22222" stroke-width="1" stroke-dasharray="6 4"/>'
    )
    out.append(
        f'<line class="threshold" x1="{left}" y1="{_fmt(ty)}" x2="{right}" y2="{_fmt(ty)}" '
        f'stroke="#b22222" stroke-width="1" stroke-dasharray="6 4"/>'
    )

    if quadrant_labels:
        corners = {
            "top_left": (left + 6, top + 16, "start"),
            "top_right": (right - 6, top + 16, "end"),
            "bottom_left": (left + 6, bottom - 8, "start"),
            "bottom_right": (right - 6, bottom - 8, "end"),
        }
        for corner, (cx, cy, anchor) in corners.items():
            label = quadrant_labels.get(corner)
            if label:
                out.append(
                    f'<text class="quadrant-label" x="{cx}" y="{cy}" text-anchor="{anchor}" '
                    f'font-size="11" fill="#999999">{escape(label)}</text>'
                )

    for label, x, y in points:
        px, py = sx(x), sy(y)
        out.append(
            f'<circle class="point" cx="{_fmt(px)}" cy="{_fmt(py)}" r="4" '
            f'fill="#1f77b4" fill-opacity="0.8"/>'
        )
        out.append(
            f'<text class="point-label" x="{_fmt(px + 6)}" y="{_fmt(py - 5)}" '
            f'font-size="10" fill="#333333">{escape(label)}</text>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"
