"""Plain SVG rendering of planar regions (display only; floats appear here and nowhere else)."""
from __future__ import annotations

from fractions import Fraction

from .geometry import Box, Region, SlopeTriangle

__all__ = ["render", "polygon_of"]

PALETTE = ("#1f4e9c", "#d1495b", "#66a182", "#edae49")


def polygon_of(p) -> list[tuple[Fraction, Fraction]]:
    """Vertices of a planar primitive, counter-clockwise, exact."""
    (x0, x1), (y0, y1) = p.bbox.intervals
    corners = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    if not isinstance(p, SlopeTriangle):
        return corners
    c = p.offset
    inside = lambda q: q[1] - q[0] <= c  # noqa: E731
    out = []
    for k, cur in enumerate(corners):
        nxt = corners[(k + 1) % 4]
        if inside(cur):
            out.append(cur)
        if inside(cur) != inside(nxt):
            # the edge crosses y = x + c
            (ax, ay), (bx, by) = cur, nxt
            t = (c - (ay - ax)) / ((by - bx) - (ay - ax))
            out.append((ax + t * (bx - ax), ay + t * (by - ay)))
    # corners lying on the line show up twice
    dedup = [q for k, q in enumerate(out) if k == 0 or q != out[k - 1]]
    while len(dedup) > 1 and dedup[-1] == dedup[0]:
        dedup.pop()
    return dedup


def render(layers, window: Box | None = None, size: int = 512, grid_level: int | None = None) -> str:
    """SVG text for ``layers``: a list of ``(region, colour-or-None)`` drawn in order.

    ``window`` fixes the view box (default: the bounding box of everything);
    ``grid_level`` overlays the dyadic grid of that level.
    """
    regions = [r for r, _ in layers if isinstance(r, Region) and r.dim == 2]
    if window is None:
        boxes = [r.bounding_box() for r in regions if r.primitives]
        if boxes:
            window = Box((
                (min(b.intervals[0][0] for b in boxes), max(b.intervals[0][1] for b in boxes)),
                (min(b.intervals[1][0] for b in boxes), max(b.intervals[1][1] for b in boxes)),
            ))
        else:
            window = Box.from_bounds((0, 1), (0, 1))
    (wx0, wx1), (wy0, wy1) = window.intervals
    span = max(wx1 - wx0, wy1 - wy0) or Fraction(1)
    scale = size / span

    def pt(x, y):
        # flip y so that the picture has the usual orientation
        return f"{float((x - wx0) * scale):.3f},{float((wy1 - y) * scale):.3f}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white" stroke="black"/>',
    ]
    for i, (region, colour) in enumerate(layers):
        if not isinstance(region, Region) or region.dim != 2:
            continue
        colour = colour or PALETTE[i % len(PALETTE)]
        parts.append(f'<g fill="{colour}" fill-opacity="0.6" stroke="none">')
        for p in region.primitives:
            poly = polygon_of(p)
            if len(poly) >= 3:
                parts.append('<polygon points="' + " ".join(pt(x, y) for x, y in poly) + '"/>')
        parts.append("</g>")
    if grid_level is not None:
        step = Fraction(1, 2**grid_level)
        parts.append('<g stroke="black" stroke-width="0.5">')
        x = wx0
        while x <= wx1:
            parts.append(f'<line x1="{pt(x, wy0).split(",")[0]}" y1="{float(0):.3f}" x2="{pt(x, wy0).split(",")[0]}" y2="{float(size):.3f}"/>')
            x += step
        y = wy0
        while y <= wy1:
            yy = pt(wx0, y).split(",")[1]
            parts.append(f'<line x1="0.000" y1="{yy}" x2="{float(size):.3f}" y2="{yy}"/>')
            y += step
        parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
