"""Deterministic SVG rendering of polygons."""

from __future__ import annotations

import xml.etree.ElementTree as ET

import numpy as np

from .errors import EmptyInput
from .geometry import Polygon

PALETTE = ("#1f4e79", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e", "#555555")
MARGIN = 0.05
WIDTH = 600


def _num(x: float) -> str:
    return f"{x:.6f}"


def _bbox(point_sets) -> tuple[float, float, float, float]:
    allpts = np.vstack(point_sets)
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    span = np.maximum(hi - lo, 1e-12)
    pad = MARGIN * span
    return lo[0] - pad[0], lo[1] - pad[1], span[0] + 2 * pad[0], span[1] + 2 * pad[1]


def render_svg(polygons, markers: bool = False, arrows: bool = False, width: int = WIDTH) -> str:
    """SVG document with one closed path per polygon.

    The view box is the bounding box of all vertices plus a 5% margin.  The
    y axis is flipped so the picture has the usual mathematical orientation.
    ``arrows`` draws the coorienting normal at the midpoint of each side.
    """
    polys = list(polygons)
    if not polys:
        raise EmptyInput("nothing to render")
    verts = [P.vertices() if isinstance(P, Polygon) else np.asarray(P, dtype=float) for P in polys]
    x0, y0, w, h = _bbox(verts)
    height = max(1, int(round(width * h / w)))
    root = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(width),
        height=str(height),
        viewBox=f"{_num(x0)} {_num(-(y0 + h))} {_num(w)} {_num(h)}",
    )
    stroke = _num(0.004 * max(w, h))
    group = ET.SubElement(root, "g", transform="scale(1,-1)")
    for i, (P, V) in enumerate(zip(polys, verts)):
        color = PALETTE[i % len(PALETTE)]
        d = "M" + " L".join(f"{_num(x)} {_num(y)}" for x, y in V) + " Z"
        attrs = {"d": d, "fill": "none", "stroke": color, "stroke-width": stroke}
        if i % 2:
            attrs["stroke-dasharray"] = f"{_num(4 * float(stroke))} {_num(2 * float(stroke))}"
        ET.SubElement(group, "path", attrs)
        if markers:
            r = _num(0.008 * max(w, h))
            for x, y in V:
                ET.SubElement(group, "circle", cx=_num(x), cy=_num(y), r=r, fill=color)
        if arrows and isinstance(P, Polygon):
            L = 0.04 * max(w, h)
            mids = 0.5 * (V + np.roll(V, 1, axis=0))  # side j runs from vertex j-1 to j
            for (mx, my), (nx, ny) in zip(mids, P.normals()):
                ET.SubElement(group, "line", x1=_num(mx), y1=_num(my), x2=_num(mx + L * nx),
                              y2=_num(my + L * ny), stroke=color, attrib={"stroke-width": stroke})
    return ET.tostring(root, encoding="unicode")


def write_svg(path, polygons, **kwargs):
    doc = render_svg(polygons, **kwargs)
    with open(path, "w") as fh:
        fh.write(doc + "\n")
