"""Minimal self-contained SVG line plot for exponent curves."""

from __future__ import annotations

import math
from typing import Dict, Sequence, Tuple
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 900, 600
MARGIN = dict(left=80, right=150, top=40, bottom=70)
STYLES = {
    "upper_t1": ("#1f77b4", ""),
    "upper_t2": ("#d62728", ""),
    "lower": ("#2ca02c", ""),
    "e_sp": ("#7f7f7f", "6,4"),
}


def _nice_ticks(lo: float, hi: float, count: int = 6):
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    k = 0
    while first + k * step <= hi + 1e-9 * step:
        ticks.append(first + k * step)
        k += 1
    return ticks


def render(x: Sequence[float], series: Dict[str, Sequence[float]], markers: Sequence[Tuple[str, float]],
           title: str, xlabel: str = "R (nats)", ylabel: str = "E(R, A)") -> str:
    finite = [v for ys in series.values() for v in ys if v is not None and math.isfinite(v)]
    x_lo, x_hi = min(x), max(x)
    y_lo, y_hi = 0.0, max(finite) * 1.05 if finite else 1.0
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def px(v):
        return MARGIN["left"] + (v - x_lo) / (x_hi - x_lo) * pw

    def py(v):
        return MARGIN["top"] + ph - (v - y_lo) / (y_hi - y_lo) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{escape(title)}</text>',
        f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _nice_ticks(x_lo, x_hi):
        out.append(f'<line x1="{px(t):.2f}" y1="{MARGIN["top"] + ph}" x2="{px(t):.2f}" y2="{MARGIN["top"] + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px(t):.2f}" y="{MARGIN["top"] + ph + 20}" text-anchor="middle" font-family="sans-serif" font-size="12">{t:g}</text>')
    for t in _nice_ticks(y_lo, y_hi):
        out.append(f'<line x1="{MARGIN["left"] - 5}" y1="{py(t):.2f}" x2="{MARGIN["left"]}" y2="{py(t):.2f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN["left"] - 8}" y="{py(t) + 4:.2f}" text-anchor="end" font-family="sans-serif" font-size="12">{t:g}</text>')
    out.append(f'<text x="{MARGIN["left"] + pw / 2:.1f}" y="{HEIGHT - 20}" text-anchor="middle" font-family="sans-serif" font-size="14">{escape(xlabel)}</text>')
    out.append(f'<text x="20" y="{MARGIN["top"] + ph / 2:.1f}" text-anchor="middle" font-family="sans-serif" font-size="14" '
               f'transform="rotate(-90 20 {MARGIN["top"] + ph / 2:.1f})">{escape(ylabel)}</text>')

    for label, xv in markers:
        if x_lo <= xv <= x_hi:
            out.append(f'<line x1="{px(xv):.2f}" y1="{MARGIN["top"]}" x2="{px(xv):.2f}" y2="{MARGIN["top"] + ph}" '
                       'stroke="#999" stroke-dasharray="2,3"/>')
            out.append(f'<text x="{px(xv) + 3:.2f}" y="{MARGIN["top"] + 14}" font-family="sans-serif" font-size="11" '
                       f'fill="#555">{escape(label)}</text>')

    for i, (name, ys) in enumerate(series.items()):
        color, dash = STYLES.get(name, ("black", ""))
        pts = " ".join(f"{px(xv):.2f},{py(yv):.2f}" for xv, yv in zip(x, ys) if yv is not None and math.isfinite(yv))
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.8"{dash_attr}/>')
        ly = MARGIN["top"] + 20 + 20 * i
        lx = WIDTH - MARGIN["right"] + 15
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 25}" y2="{ly}" stroke="{color}" stroke-width="1.8"{dash_attr}/>')
        out.append(f'<text x="{lx + 30}" y="{ly + 4}" font-family="sans-serif" font-size="12">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
