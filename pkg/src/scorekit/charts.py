"""Deliberately minimal SVG charts for explanation and report artifacts.

The JSON artifacts are canonical; these are reading aids. Only axes,
bars, lines and labels -- no external plotting dependency, and the output
bytes are deterministic.
"""

from __future__ import annotations

from pathlib import Path

WIDTH = 720
HEIGHT = 440
MARGIN_L = 150
MARGIN_R = 30
MARGIN_T = 48
MARGIN_B = 52

PALETTE = ["#2166ac", "#b2182b", "#1b7837", "#e08214", "#762a83", "#525252"]


def _fmt(v: float) -> str:
    return format(float(v), ".2f")


def _num(v: float) -> str:
    return format(float(v), ".4g")


class _Svg:
    def __init__(self, width=WIDTH, height=HEIGHT):
        self.width = width
        self.height = height
        self.parts = [
            '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
            'viewBox="0 0 %d %d" font-family="sans-serif" font-size="12">'
            % (width, height, width, height)
        ]

    def rect(self, x, y, w, h, fill):
        self.parts.append(
            '<rect x="%s" y="%s" width="%s" height="%s" fill="%s"/>'
            % (_fmt(x), _fmt(y), _fmt(w), _fmt(h), fill)
        )

    def line(self, x1, y1, x2, y2, stroke="#333", width=1.0):
        self.parts.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="%s" stroke-width="%s"/>'
            % (_fmt(x1), _fmt(y1), _fmt(x2), _fmt(y2), stroke, _fmt(width))
        )

    def polyline(self, points, stroke, width=1.6):
        coords = " ".join("%s,%s" % (_fmt(x), _fmt(y)) for x, y in points)
        self.parts.append(
            '<polyline points="%s" fill="none" stroke="%s" stroke-width="%s"/>'
            % (coords, stroke, _fmt(width))
        )

    def circle(self, x, y, r, fill):
        self.parts.append(
            '<circle cx="%s" cy="%s" r="%s" fill="%s"/>' % (_fmt(x), _fmt(y), _fmt(r), fill)
        )

    def text(self, x, y, s, anchor="start", size=12, fill="#111"):
        self.parts.append(
            '<text x="%s" y="%s" text-anchor="%s" font-size="%d" fill="%s">%s</text>'
            % (_fmt(x), _fmt(y), anchor, size, fill, _escape(s))
        )

    def save(self, path):
        self.parts.append("</svg>")
        Path(path).write_text("\n".join(self.parts) + "\n", encoding="utf-8")


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _x_scale(lo, hi, x0, x1):
    span = hi - lo if hi > lo else 1.0
    return lambda v: x0 + (v - lo) / span * (x1 - x0)


def bar_chart_h(items, path, title="", value_label=""):
    """Horizontal bars, one per (label, value), sorted as given."""
    svg = _Svg(height=max(HEIGHT, MARGIN_T + MARGIN_B + 22 * len(items)))
    x0, x1 = MARGIN_L, svg.width - MARGIN_R
    y0 = MARGIN_T
    vmax = max((v for _, v in items), default=0.0)
    vmin = min((v for _, v in items), default=0.0)
    scale = _x_scale(min(0.0, vmin), max(0.0, vmax), x0, x1)
    svg.text(svg.width / 2, 24, title, anchor="middle", size=14)
    zero_x = scale(0.0)
    for i, (label, value) in enumerate(items):
        y = y0 + i * 22
        vx = scale(value)
        svg.rect(min(zero_x, vx), y, abs(vx - zero_x), 14,
                 PALETTE[0] if value >= 0 else PALETTE[1])
        svg.text(x0 - 8, y + 11, label, anchor="end")
        svg.text(max(zero_x, vx) + 4, y + 11, _num(value), size=10, fill="#444")
    base_y = y0 + len(items) * 22 + 8
    svg.line(zero_x, y0 - 6, zero_x, base_y, stroke="#888")
    svg.text((x0 + x1) / 2, base_y + 26, value_label, anchor="middle")
    svg.save(path)


def line_chart(series, path, title="", x_label="", y_label="", markers=()):
    """Overlaid polylines; `series` maps name -> (xs, ys)."""
    svg = _Svg()
    x0, x1 = 70, svg.width - MARGIN_R
    y0, y1 = svg.height - MARGIN_B, MARGIN_T
    all_x = [v for xs, _ in series.values() for v in xs]
    all_y = [v for _, ys in series.values() for v in ys]
    all_x += [m[0] for m in markers]
    all_y += [m[1] for m in markers]
    if not all_x:
        raise ValueError("nothing to plot")
    sx = _x_scale(min(all_x), max(all_x), x0, x1)
    pad = 0.05 * ((max(all_y) - min(all_y)) or 1.0)
    sy = _x_scale(min(all_y) - pad, max(all_y) + pad, y0, y1)
    svg.text(svg.width / 2, 24, title, anchor="middle", size=14)
    svg.line(x0, y0, x1, y0, stroke="#888")
    svg.line(x0, y0, x0, y1, stroke="#888")
    for tick in (min(all_x), (min(all_x) + max(all_x)) / 2, max(all_x)):
        svg.text(sx(tick), y0 + 18, _num(tick), anchor="middle", size=10)
    for tick in (min(all_y), (min(all_y) + max(all_y)) / 2, max(all_y)):
        svg.text(x0 - 6, sy(tick) + 4, _num(tick), anchor="end", size=10)
    for i, (name, (xs, ys)) in enumerate(series.items()):
        color = PALETTE[i % len(PALETTE)]
        svg.polyline([(sx(x), sy(y)) for x, y in zip(xs, ys)], stroke=color)
        svg.text(x1 - 4, y1 + 16 + 16 * i, name, anchor="end", size=11, fill=color)
    for mx, my in markers:
        svg.circle(sx(mx), sy(my), 4, PALETTE[1])
    svg.text((x0 + x1) / 2, svg.height - 14, x_label, anchor="middle")
    svg.text(16, (y0 + y1) / 2, y_label, anchor="middle", size=11)
    svg.save(path)


def waterfall(intercept, contributions, final, path, title=""):
    """Intercept bar, signed per-feature steps, then the final prediction."""
    rows = [("intercept", intercept, None)]
    running = intercept
    for name, delta in contributions:
        rows.append((name, delta, running))
        running += delta
    rows.append(("prediction", final, None))

    svg = _Svg(height=max(HEIGHT, MARGIN_T + MARGIN_B + 24 * len(rows)))
    x0, x1 = MARGIN_L, svg.width - MARGIN_R
    levels = [intercept, final]
    run = intercept
    for _, delta, _ in rows[1:-1]:
        levels += [run, run + delta]
        run += delta
    scale = _x_scale(min(0.0, min(levels)), max(levels), x0, x1)
    svg.text(svg.width / 2, 24, title, anchor="middle", size=14)
    for i, (label, value, start) in enumerate(rows):
        y = MARGIN_T + i * 24
        if start is None:  # intercept / final: absolute bars
            svg.rect(scale(0.0), y, abs(scale(value) - scale(0.0)), 15, PALETTE[0])
            edge = scale(value)
        else:  # contribution: bar from the running level
            a, b = scale(start), scale(start + value)
            svg.rect(min(a, b), y, max(abs(b - a), 0.5), 15,
                     PALETTE[2] if value >= 0 else PALETTE[1])
            edge = max(a, b)
        svg.text(x0 - 8, y + 11, label, anchor="end")
        svg.text(edge + 4, y + 11, ("%+.4f" % value) if start is not None else _num(value),
                 size=10, fill="#444")
    svg.save(path)


def dot_plot(points, path, title="", y_label=""):
    """Per-model dots for split metrics; `points` maps model ->
    {split: value}. Splits become colored dot columns, models the x axis."""
    svg = _Svg()
    x0, x1 = 70, svg.width - MARGIN_R
    y0, y1 = svg.height - MARGIN_B, MARGIN_T
    splits = sorted({s for vals in points.values() for s in vals})
    values = [v for vals in points.values() for v in vals.values() if v is not None]
    if not values:
        raise ValueError("nothing to plot")
    pad = 0.05 * ((max(values) - min(values)) or 1.0)
    sy = _x_scale(min(values) - pad, max(values) + pad, y0, y1)
    svg.text(svg.width / 2, 24, title, anchor="middle", size=14)
    svg.line(x0, y0, x1, y0, stroke="#888")
    svg.line(x0, y0, x0, y1, stroke="#888")
    models = list(points)
    step = (x1 - x0) / max(1, len(models))
    for i, model in enumerate(models):
        cx = x0 + step * (i + 0.5)
        svg.text(cx, y0 + 18, model, anchor="middle", size=10)
        for k, split in enumerate(splits):
            v = points[model].get(split)
            if v is None:
                continue
            svg.circle(cx + (k - (len(splits) - 1) / 2) * 9, sy(v), 4,
                       PALETTE[k % len(PALETTE)])
    for k, split in enumerate(splits):
        svg.text(x1 - 4, y1 + 16 + 14 * k, split, anchor="end", size=11,
                 fill=PALETTE[k % len(PALETTE)])
    for tick in (min(values), max(values)):
        svg.text(x0 - 6, sy(tick) + 4, _num(tick), anchor="end", size=10)
    svg.text(16, (y0 + y1) / 2, y_label, anchor="middle", size=11)
    svg.save(path)
