"""SVG rendering of grounded curve families."""

from __future__ import annotations

from pathlib import Path

from .curves import CurveFamily

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def _num(v: float) -> str:
    # fixed formatting keeps the output byte-stable
    text = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def render_svg(f: CurveFamily) -> str:
    """SVG 1.1 document: y flipped to screen orientation, the ground axis, one polyline and label per curve."""
    xs = [0]
    ys = []
    for c in f.curves:
        for x, y in c.points:
            xs.append(x)
            ys.append(-y)
    if not ys:
        ys = [-10, 10]
    xmin, xmax = min(xs), max(max(xs), 1)
    ymin, ymax = min(ys), max(ys)
    if ymin == ymax:
        ymin, ymax = ymin - 1, ymax + 1
    margin = 0.05 * max(xmax - xmin, ymax - ymin)
    vx, vy = xmin - margin, ymin - margin
    vw, vh = xmax - xmin + 2 * margin, ymax - ymin + 2 * margin
    stroke = max(vw, vh) / 400
    font = max(vw, vh) / 50

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_num(vx)} {_num(vy)} {_num(vw)} {_num(vh)}">',
        f'<line id="ground" x1="0" y1="{_num(ymin - margin)}" x2="0" y2="{_num(ymax + margin)}" '
        f'stroke="#000000" stroke-width="{_num(2 * stroke)}"/>',
    ]
    for idx, c in enumerate(f.curves):
        colour = PALETTE[idx % len(PALETTE)]
        pts = " ".join(f"{x},{-y}" for x, y in c.points)
        lines.append(
            f'<polyline id="curve-{c.id}" points="{pts}" fill="none" stroke="{colour}" '
            f'stroke-width="{_num(stroke)}"/>'
        )
    for c in f.curves:
        x0, y0 = c.points[0]
        lines.append(
            f'<text x="{_num(x0 - font * 1.5)}" y="{_num(-y0 + font / 3)}" font-size="{_num(font)}" '
            f'font-family="sans-serif">{c.id}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def export_svg(f: CurveFamily, path) -> None:
    path = Path(path)
    try:
        path.write_text(render_svg(f), encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write SVG to {path}: {exc}") from exc
