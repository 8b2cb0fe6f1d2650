"""Angle-bisector evolutes.

``A_o`` uses the orientation carried by the coorientation: output line ``j``
is the interior bisector (direction ``e' - e``) of the angle between lines
``j`` and ``j + 1`` and passes through vertex ``j``.  The source labels these
lines ``j + 1/2``; here they are shifted down to integer labels and
:class:`OrientedPolygon` counts the accumulated half steps.

``A_c`` orients the sides cyclically along the vertex order, applies ``A_o``
and then re-imposes the cyclic orientation on the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidentVertices, DegenerateTurning, EvoluteParallelSides
from .geometry import Polygon, line_through, reflect_line

COLLAPSE_REL = 1e-10


@dataclass(frozen=True)
class OrientedPolygon:
    """A polygon together with per-side orientation flags (``+1`` keeps, ``-1`` reverses)."""

    base: Polygon
    flags: tuple
    half_steps: int = 0  # index offset, counted in half labels

    def __post_init__(self):
        flags = tuple(int(np.sign(f)) or 1 for f in self.flags)
        if len(flags) != self.base.n:
            raise ValueError("one orientation flag per side is required")
        object.__setattr__(self, "flags", flags)

    @classmethod
    def of(cls, P: Polygon) -> OrientedPolygon:
        return cls(P, (1,) * P.n)

    @property
    def polygon(self) -> Polygon:
        return self.base.reoriented(self.flags)

    def flipped(self) -> OrientedPolygon:
        return OrientedPolygon(self.base, tuple(-f for f in self.flags), self.half_steps)


def _a_o_coordinates(P: Polygon) -> tuple[np.ndarray, np.ndarray]:
    theta = P.turning_angles()
    alpha = P.alpha + theta / 2 + math.pi / 2
    p = (np.roll(P.p, -1) - P.p) / (2.0 * np.sin(theta / 2))
    return alpha, p


def a_o_lines(P: Polygon) -> list:
    """Output lines without the consecutive-parallel check."""
    from .geometry import CoorientedLine

    alpha, p = _a_o_coordinates(P)
    return [CoorientedLine(a, q) for a, q in zip(alpha, p)]


def _a_o(P: Polygon) -> Polygon:
    alpha, p = _a_o_coordinates(P)
    try:
        return Polygon(alpha, p)
    except DegenerateTurning as exc:
        raise EvoluteParallelSides(str(exc)) from exc


def a_o_evolute(P):
    """Oriented angle-bisector evolute of a Polygon or an OrientedPolygon."""
    if isinstance(P, OrientedPolygon):
        out = _a_o(P.polygon)
        return OrientedPolygon(out, (1,) * out.n, P.half_steps + 1)
    return _a_o(P)


def angle_map(theta) -> np.ndarray:
    """Turning angles of the ``A_o``-evolute: ``theta*[j] = (theta[j] + theta[j+1]) / 2``."""
    theta = np.asarray(theta, dtype=float)
    return 0.5 * (theta + np.roll(theta, -1))


def angle_map_eigenvalues(n: int) -> np.ndarray:
    return (1 + np.exp(2j * np.pi * np.arange(n) / n)) / 2


def bisectors_at(P: Polygon, j: int):
    """Interior and exterior bisectors of the angle at vertex ``j`` (oriented)."""
    lines = P.lines
    l, l2 = lines[j], lines[(j + 1) % P.n]
    V = P.vertices()[j]
    e, e2 = l.direction, l2.direction
    interior = line_through(V, V + (e2 - e))
    exterior = line_through(V, V + (e + e2))
    return interior, exterior


def is_bisector(mirror, P: Polygon, j: int, tol: float = 1e-8) -> bool:
    """Whether ``mirror`` passes through vertex j and swaps the two sides meeting there."""
    lines = P.lines
    V = P.vertices()[j]
    scale = 1.0 + float(np.max(np.abs(V)))
    if abs(mirror.signed_distance(V)) > tol * scale:
        return False
    img = reflect_line(mirror, lines[j])
    target = lines[(j + 1) % P.n]
    return same_unoriented_line(img, target, tol * scale)


def same_unoriented_line(a, b, tol: float = 1e-8) -> bool:
    s = math.sin(a.alpha - b.alpha)
    c = math.cos(a.alpha - b.alpha)
    if abs(s) > tol:
        return False
    return abs(a.p - math.copysign(1.0, c) * b.p) <= tol


def _spread(V: np.ndarray) -> float:
    return float(np.max(np.linalg.norm(V - V.mean(axis=0), axis=1)))


def cyclic_polygon(V) -> Polygon:
    """Sides oriented along the vertex order (outward normals for counterclockwise order)."""
    return Polygon.from_vertices(V, "ccw")


def a_c_evolute(P) -> Polygon:
    """Angle-bisector evolute with the cyclic orientation re-imposed.

    ``P`` may be a Polygon (its vertices are used) or an ``(n, 2)`` vertex
    array.  When the bisectors are concurrent the output collapses to a point;
    the bisector lines are then returned as they are, so callers can detect the
    collapse from the coinciding vertices.
    """
    V = P.vertices() if isinstance(P, Polygon) else np.asarray(P, dtype=float)
    d = np.linalg.norm(V - np.roll(V, 1, axis=0), axis=1)
    scale = 1.0 + float(np.max(np.abs(V)))
    if np.any(d <= COLLAPSE_REL * scale):
        raise CoincidentVertices("consecutive vertices coincide")
    Q = _a_o(cyclic_polygon(V))
    W = Q.vertices()
    wscale = 1.0 + float(np.max(np.abs(W)))
    if _spread(W) <= COLLAPSE_REL * wscale:
        return Q
    dw = np.linalg.norm(W - np.roll(W, 1, axis=0), axis=1)
    if np.any(dw <= COLLAPSE_REL * wscale):
        raise CoincidentVertices("consecutive vertices of the evolute coincide")
    return cyclic_polygon(W)
