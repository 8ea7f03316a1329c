"""Static SVG line charts of response-table columns."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

from .errors import ParameterError
from .sweep import ResponseTable

WIDTH, HEIGHT = 800, 500
MARGIN = dict(left=70, right=150, top=30, bottom=50)
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")
PLOTTABLE = ("re_eps", "im_eps", "re_mu", "im_mu", "re_n", "im_n",
             "absorption_a", "group_index")


def _nice_ticks(lo, hi, target=6):
    span = hi - lo
    raw = span / target
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step) * step
    return [first + i * step for i in range(int(math.floor((hi - first) / step + 1e-9)) + 1)]


def emit_svg(table: ResponseTable, columns, path=None) -> str:
    """Line chart of ``columns`` against the probe detuning.

    Non-finite values are skipped. The y-range always contains zero so the
    zero line is drawn. Written to ``path`` when given.
    """
    columns = list(columns)
    if not columns:
        raise ParameterError("no columns requested")
    for name in columns:
        if name not in PLOTTABLE:
            raise ParameterError(f"unknown column {name!r}; valid: {', '.join(PLOTTABLE)}")

    x = table.delta_p
    ys = {name: table.column(name) for name in columns}
    finite = np.concatenate([y[np.isfinite(y)] for y in ys.values()] + [np.zeros(1)])
    ymin, ymax = float(finite.min()), float(finite.max())
    if ymax == ymin:
        ymin, ymax = ymin - 1.0, ymax + 1.0
    pad = 0.05 * (ymax - ymin)
    ymin, ymax = ymin - pad, ymax + pad
    xmin, xmax = float(x[0]), float(x[-1])

    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def sx(v):
        return MARGIN["left"] + (v - xmin) / (xmax - xmin) * pw

    def sy(v):
        return MARGIN["top"] + (ymax - v) / (ymax - ymin) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{pw}" height="{ph}" '
        'fill="white" stroke="black"/>',
    ]
    y0 = sy(0.0)
    out.append(f'<line class="zero" x1="{sx(xmin):.3f}" y1="{y0:.3f}" x2="{sx(xmax):.3f}" '
               f'y2="{y0:.3f}" stroke="#888" stroke-dasharray="4 3"/>')

    base = MARGIN["top"] + ph
    for tick in range(math.ceil(xmin), math.floor(xmax) + 1):
        px = sx(tick)
        out.append(f'<line class="xtick" x1="{px:.3f}" y1="{base}" x2="{px:.3f}" '
                   f'y2="{base + 5}" stroke="black"/>')
        out.append(f'<text x="{px:.3f}" y="{base + 20}" text-anchor="middle">{tick}</text>')
    for tick in _nice_ticks(ymin, ymax):
        py = sy(tick)
        out.append(f'<line class="ytick" x1="{MARGIN["left"] - 5}" y1="{py:.3f}" '
                   f'x2="{MARGIN["left"]}" y2="{py:.3f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN["left"] - 8}" y="{py + 4:.3f}" '
                   f'text-anchor="end">{tick:g}</text>')
    out.append(f'<text x="{MARGIN["left"] + pw / 2}" y="{HEIGHT - 8}" '
               'text-anchor="middle">probe detuning / gamma</text>')

    for i, name in enumerate(columns):
        color = COLORS[i % len(COLORS)]
        y = ys[name]
        ok = np.isfinite(y)
        pts = " ".join(f"{sx(a):.3f},{sy(b):.3f}" for a, b in zip(x[ok], y[ok]))
        out.append(f'<polyline data-column="{escape(name)}" fill="none" stroke="{color}" '
                   f'stroke-width="1.5" points="{pts}"/>')
        ly = MARGIN["top"] + 20 + 20 * i
        lx = WIDTH - MARGIN["right"] + 15
        out.append(f'<g class="legend"><line x1="{lx}" y1="{ly}" x2="{lx + 25}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"/>'
                   f'<text x="{lx + 32}" y="{ly + 4}">{escape(name)}</text></g>')
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
