"""Minimal static SVG line charts."""

from __future__ import annotations

from xml.sax.saxutils import escape

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd")
WIDTH, HEIGHT = 720, 400
MARGIN = (60, 20, 40, 70)  # left, right, top, bottom


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def line_chart(series: dict[str, tuple], title: str = "", ylabel: str = "") -> str:
    """Render ``{label: (xs, ys)}`` as an SVG document, one polyline per label."""
    if not series:
        raise ValueError("no series to plot")
    xs_all = [x for xs, _ in series.values() for x in xs]
    ys_all = [y for _, ys in series.values() for y in ys]
    x0, x1 = min(xs_all), max(xs_all)
    y0, y1 = min(ys_all), max(ys_all)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        pad = abs(y0) * 0.05 or 1.0
        y0, y1 = y0 - pad, y1 + pad
    left, right, top, bottom = MARGIN
    pw, ph = WIDTH - left - right, HEIGHT - top - bottom

    def sx(x):
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return top + (y1 - y) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="16" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#444"/>',
    ]
    for k in range(5):
        yv = y0 + (y1 - y0) * k / 4
        ypix = sy(yv)
        out.append(f'<line x1="{left}" y1="{_fmt(ypix)}" x2="{left + pw}" y2="{_fmt(ypix)}" stroke="#ddd"/>')
        out.append(f'<text x="{left - 4}" y="{_fmt(ypix + 4)}" text-anchor="end">{yv:.4g}</text>')
        xv = x0 + (x1 - x0) * k / 4
        out.append(f'<text x="{_fmt(sx(xv))}" y="{top + ph + 14}" text-anchor="middle">{xv:.4g}</text>')
    out.append(f'<text x="{left + pw / 2}" y="{HEIGHT - 28}" text-anchor="middle">period</text>')
    if ylabel:
        out.append(
            f'<text x="14" y="{top + ph / 2}" text-anchor="middle" '
            f'transform="rotate(-90 14 {top + ph / 2})">{escape(ylabel)}</text>'
        )
    for i, (label, (xs, ys)) in enumerate(series.items()):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in zip(xs, ys))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        lx = left + 10 + 150 * i
        out.append(f'<line x1="{lx}" y1="{HEIGHT - 10}" x2="{lx + 20}" y2="{HEIGHT - 10}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 24}" y="{HEIGHT - 6}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
