"""SVG rendering of hull layers and the first peel steps."""
from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Sequence

from .geometry import Point
from .hull import hull_cw, layer_lists

__all__ = ["render_peel", "MAX_STEPS"]

MAX_STEPS = 50
_SIZE = 800
_PAD = 30


def _removed_regions(points, peeled_ids):
    """Polygon lost at each step: t, u, v, then the new chain back to t."""
    remaining = sorted(points, key=lambda p: (p.x, p.y))
    ring = hull_cw(remaining, presorted=True)
    out = []
    for pid in peeled_ids:
        i = next((j for j, p in enumerate(ring) if p.id == pid), None)
        remaining = [p for p in remaining if p.id != pid]
        new_ring = hull_cw(remaining, presorted=True)
        if i is None or len(ring) < 3:
            out.append([])
            ring = new_ring
            continue
        t, u, v = ring[i - 1], ring[i], ring[(i + 1) % len(ring)]
        pos = {p.id: j for j, p in enumerate(new_ring)}
        chain = []
        if t.id in pos and v.id in pos:
            j = pos[t.id]
            while True:
                j = (j + 1) % len(new_ring)
                if new_ring[j].id == v.id:
                    break
                chain.append(new_ring[j])
        out.append([t, u, v] + chain[::-1])
        ring = new_ring
    return out


def render_peel(points: Sequence[Point], peeled: Sequence[Point], *,
                max_steps: int = MAX_STEPS, title: str | None = None) -> str:
    """SVG document: one polyline per convex layer, numbered peels, shading.

    Only the first ``max_steps`` peels are drawn.
    """
    pts = list(points)
    shown = list(peeled)[:max_steps]
    xs = [float(p.x) for p in pts] or [0.0]
    ys = [float(p.y) for p in pts] or [0.0]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    k = (_SIZE - 2 * _PAD) / span

    def sx(p):
        return f"{_PAD + (float(p.x) - x0) * k:.3f}"

    def sy(p):
        return f"{_SIZE - _PAD - (float(p.y) - y0) * k:.3f}"

    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "version": "1.1",
        "width": str(_SIZE),
        "height": str(_SIZE),
        "viewBox": f"0 0 {_SIZE} {_SIZE}",
    })
    if title:
        ET.SubElement(svg, "title").text = title
    regions = ET.SubElement(svg, "g", {"id": "removed", "fill": "#f4a582",
                                       "fill-opacity": "0.5", "stroke": "none"})
    for poly in _removed_regions(pts, [p.id for p in shown]):
        if len(poly) >= 3:
            ET.SubElement(regions, "polygon", {
                "points": " ".join(f"{sx(p)},{sy(p)}" for p in poly)})
    layers = ET.SubElement(svg, "g", {"id": "layers", "fill": "none",
                                      "stroke": "#4d4d4d", "stroke-width": "1"})
    for ring in layer_lists(pts):
        closed = ring + ring[:1] if len(ring) > 2 else ring
        ET.SubElement(layers, "polyline", {
            "points": " ".join(f"{sx(p)},{sy(p)}" for p in closed)})
    dots = ET.SubElement(svg, "g", {"id": "points", "fill": "#2166ac"})
    for p in pts:
        ET.SubElement(dots, "circle", {"cx": sx(p), "cy": sy(p), "r": "2"})
    labels = ET.SubElement(svg, "g", {"id": "peels", "fill": "#b2182b",
                                      "font-size": "11", "font-family": "sans-serif"})
    for step, p in enumerate(shown, start=1):
        ET.SubElement(labels, "circle", {"cx": sx(p), "cy": sy(p), "r": "3.5"})
        ET.SubElement(labels, "text", {"x": sx(p), "y": sy(p), "dx": "4",
                                       "dy": "-4"}).text = str(step)
    return ET.tostring(svg, encoding="unicode", xml_declaration=True) + "\n"
