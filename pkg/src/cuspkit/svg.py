"""SVG rendering of a curve and its evolutes."""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass

SVG_NS = "http://www.w3.org/2000/svg"
COLORS = ("red", "green", "orange", "blue", "purple", "brown", "magenta", "teal", "olive", "navy")


@dataclass(frozen=True)
class Polyline:
    label: str
    points: list  # [(x, y), ...] in curve coordinates
    color: str


def _bbox(points):
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    if not xs:
        return -1.0, -1.0, 1.0, 1.0
    return min(xs), min(ys), max(xs), max(ys)


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def render(polylines: list, marker=None, title: str = "", margin: float = 0.05) -> str:
    """Return SVG 1.1 markup.  The y axis points up, as in the usual plane picture."""
    pts = [p for pl in polylines for p in pl.points]
    if marker is not None:
        pts.append(marker)
    x0, y0, x1, y1 = _bbox(pts)
    w, h = x1 - x0, y1 - y0
    span = max(w, h, 1e-9)
    w, h = max(w, span * 1e-3), max(h, span * 1e-3)
    mx, my = w * margin, h * margin
    # y is flipped by plotting (x, -y)
    vb = (x0 - mx, -(y1 + my), w + 2 * mx, h + 2 * my)
    stroke = span * 0.004
    font = span * 0.035

    ET.register_namespace("", SVG_NS)
    root = ET.Element(f"{{{SVG_NS}}}svg", {
        "version": "1.1",
        "width": "600",
        "height": _fmt(600 * vb[3] / vb[2]) if vb[2] > 0 else "600",
        "viewBox": " ".join(_fmt(v) for v in vb),
    })
    if title:
        ET.SubElement(root, f"{{{SVG_NS}}}title").text = title
    for pl in polylines:
        ET.SubElement(root, f"{{{SVG_NS}}}polyline", {
            "points": " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in pl.points),
            "fill": "none",
            "stroke": pl.color,
            "stroke-width": _fmt(stroke),
        })
    if marker is not None:
        ET.SubElement(root, f"{{{SVG_NS}}}circle", {
            "cx": _fmt(marker[0]), "cy": _fmt(-marker[1]), "r": _fmt(stroke * 2.5), "fill": "black",
        })
    legend = ET.SubElement(root, f"{{{SVG_NS}}}g", {"class": "legend", "font-size": _fmt(font)})
    lx, ly = vb[0] + font * 0.5, vb[1] + font * 1.2
    for i, pl in enumerate(polylines):
        y = ly + i * font * 1.3
        ET.SubElement(legend, f"{{{SVG_NS}}}line", {
            "x1": _fmt(lx), "y1": _fmt(y - font * 0.3), "x2": _fmt(lx + font * 1.5), "y2": _fmt(y - font * 0.3),
            "stroke": pl.color, "stroke-width": _fmt(stroke),
        })
        ET.SubElement(legend, f"{{{SVG_NS}}}text", {"x": _fmt(lx + font * 2), "y": _fmt(y)}).text = pl.label
    return ET.tostring(root, encoding="unicode", xml_declaration=True)


def finite(points):
    return [(x, y) for x, y in points if math.isfinite(x) and math.isfinite(y)]
