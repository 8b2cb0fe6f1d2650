"""Cooriented lines, polygons given by their support numbers, and planar isometries.

A cooriented line ``(alpha, p)`` is the set ``x cos(alpha) + y sin(alpha) = p``
together with the unit normal ``e_alpha``.  Its orienting vector is the normal
turned counterclockwise by a quarter turn, ``v = (-sin(alpha), cos(alpha))``.

A :class:`Polygon` is a cyclic sequence of such lines.  Vertex ``j`` (0-based)
is the intersection of lines ``j`` and ``j + 1``; line ``j`` therefore carries
the side running from vertex ``j - 1`` to vertex ``j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateTurning,
    EmptyInput,
    EvenGon,
    ParallelLines,
)

TWO_PI = 2.0 * math.pi

EPS_PARALLEL = 1e-9
EPS_ISO = 1e-9
EPS_ANGLE = 1e-9


def eps_qp(p) -> float:
    """Tolerance used when deciding that a quasiperimeter vanishes."""
    p = np.asarray(p, dtype=float)
    scale = float(np.max(np.abs(p))) if p.size else 0.0
    return 1e-8 * (1.0 + scale)


def canonical_angle(a):
    """Representative of ``a`` modulo 2*pi in ``[0, 2*pi)``."""
    r = np.mod(a, TWO_PI)
    # np.mod can round a tiny negative input up to exactly 2*pi
    r = np.where(r >= TWO_PI, r - TWO_PI, r)
    if np.ndim(r) == 0:
        return float(r)
    return r


def reduce_angle(a):
    """Representative of ``a`` modulo 2*pi in ``[-pi, pi)``."""
    r = np.mod(np.asarray(a, dtype=float) + math.pi, TWO_PI) - math.pi
    if np.ndim(r) == 0:
        return float(r)
    return r


def unit(a):
    return np.array([math.cos(a), math.sin(a)])


def rotation_matrix(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True)
class CoorientedLine:
    """The line ``x cos(alpha) + y sin(alpha) = p`` with normal ``e_alpha``."""

    alpha: float
    p: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", canonical_angle(float(self.alpha)))
        object.__setattr__(self, "p", float(self.p))

    @property
    def normal(self) -> np.ndarray:
        return unit(self.alpha)

    @property
    def direction(self) -> np.ndarray:
        return np.array([-math.sin(self.alpha), math.cos(self.alpha)])

    @property
    def foot(self) -> np.ndarray:
        """Foot of the perpendicular dropped from the origin."""
        return self.p * self.normal

    def reversed(self) -> CoorientedLine:
        return CoorientedLine(self.alpha + math.pi, -self.p)

    def signed_distance(self, u) -> float:
        u = np.asarray(u, dtype=float)
        return float(u[0] * math.cos(self.alpha) + u[1] * math.sin(self.alpha) - self.p)

    def contains(self, u, tol: float = EPS_ISO) -> bool:
        return abs(self.signed_distance(u)) <= tol

    def point_at(self, t: float) -> np.ndarray:
        """Point at signed arclength ``t`` from the foot, along the orientation."""
        return self.foot + t * self.direction


def line_through(a, b, normal_angle: float | None = None) -> CoorientedLine:
    """Line through points ``a`` and ``b`` oriented from ``a`` to ``b``.

    If ``normal_angle`` is given the line gets that coorientation instead and
    only one point is used.
    """
    a = np.asarray(a, dtype=float)
    if normal_angle is not None:
        e = unit(normal_angle)
        return CoorientedLine(normal_angle, float(a @ e))
    d = np.asarray(b, dtype=float) - a
    norm = math.hypot(d[0], d[1])
    if norm == 0.0:
        raise ValueError("line_through needs two distinct points")
    # normal = direction turned clockwise
    alpha = math.atan2(-d[0], d[1])
    return CoorientedLine(alpha, float(a @ unit(alpha)))


def vertex(l_i: CoorientedLine, l_j: CoorientedLine) -> np.ndarray:
    """Intersection point of two cooriented lines."""
    theta = l_j.alpha - l_i.alpha
    s = math.sin(theta)
    if abs(s) <= EPS_PARALLEL:
        raise ParallelLines(f"lines {l_i} and {l_j} are parallel")
    x = (l_i.p * math.sin(l_j.alpha) - l_j.p * math.sin(l_i.alpha)) / s
    y = (l_j.p * math.cos(l_i.alpha) - l_i.p * math.cos(l_j.alpha)) / s
    return np.array([x, y])


class Polygon:
    """Immutable cyclic sequence of cooriented lines.

    Construct with arrays of normal angles and support numbers, from a list of
    :class:`CoorientedLine`, or with :meth:`from_vertices`.
    """

    __slots__ = ("_alpha", "_p")

    def __init__(self, alpha, p):
        alpha = canonical_angle(np.array(alpha, dtype=float).ravel())
        p = np.array(p, dtype=float).ravel()
        if alpha.shape != p.shape:
            raise ValueError("alpha and p must have the same length")
        if alpha.size < 3:
            raise ValueError("a polygon needs at least 3 lines")
        if not (np.all(np.isfinite(alpha)) and np.all(np.isfinite(p))):
            raise ValueError("non-finite line coordinates")
        s = np.sin(np.roll(alpha, -1) - alpha)
        bad = np.flatnonzero(np.abs(s) <= EPS_PARALLEL)
        if bad.size:
            raise DegenerateTurning(f"consecutive lines {bad[0]} and {(bad[0] + 1) % alpha.size} are parallel")
        alpha.flags.writeable = False
        p.flags.writeable = False
        self._alpha = alpha
        self._p = p

    @classmethod
    def from_lines(cls, lines: Iterable[CoorientedLine]) -> Polygon:
        lines = list(lines)
        return cls([l.alpha for l in lines], [l.p for l in lines])

    @classmethod
    def from_vertices(cls, vertices, coorientation: str = "ccw") -> Polygon:
        """Polygon whose ``j``-th vertex is ``vertices[j]``.

        Side ``j`` runs from ``vertices[j - 1]`` to ``vertices[j]``.  With
        ``"ccw"`` each normal is the side direction turned clockwise (outward
        for a counterclockwise vertex order); ``"cw"`` uses the opposite turn.
        Side orientations follow the vertex order for ``"ccw"`` and oppose it
        for ``"cw"``.
        """
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise ValueError("vertices must be an (n, 2) array")
        if coorientation not in ("ccw", "cw"):
            raise ValueError("coorientation must be 'ccw' or 'cw'")
        d = v - np.roll(v, 1, axis=0)
        lengths = np.hypot(d[:, 0], d[:, 1])
        if np.any(lengths == 0.0):
            from .errors import CoincidentVertices

            raise CoincidentVertices("consecutive vertices coincide")
        alpha = np.arctan2(-d[:, 0], d[:, 1])
        if coorientation == "cw":
            alpha = alpha + math.pi
        p = np.einsum("ij,ij->i", v, np.column_stack([np.cos(alpha), np.sin(alpha)]))
        return cls(alpha, p)

    @classmethod
    def doubled(cls, lines: Sequence[CoorientedLine]) -> Polygon:
        """The 2n-gon representing a half-integer-turning polygon.

        Lines ``n .. 2n-1`` are lines ``0 .. n-1`` with reversed coorientation.
        """
        lines = list(lines)
        return cls.from_lines(lines + [l.reversed() for l in lines])

    @property
    def alpha(self) -> np.ndarray:
        return self._alpha

    @property
    def p(self) -> np.ndarray:
        return self._p

    @property
    def n(self) -> int:
        return self._alpha.size

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.lines)

    def __getitem__(self, j: int) -> CoorientedLine:
        j = j % self.n
        return CoorientedLine(self._alpha[j], self._p[j])

    @property
    def lines(self) -> tuple[CoorientedLine, ...]:
        return tuple(CoorientedLine(a, q) for a, q in zip(self._alpha, self._p))

    def __repr__(self):
        return f"Polygon(alpha={self._alpha.tolist()!r}, p={self._p.tolist()!r})"

    def with_p(self, p) -> Polygon:
        return Polygon(self._alpha, p)

    def normals(self) -> np.ndarray:
        return np.column_stack([np.cos(self._alpha), np.sin(self._alpha)])

    def vertices(self) -> np.ndarray:
        a0, a1 = self._alpha, np.roll(self._alpha, -1)
        p0, p1 = self._p, np.roll(self._p, -1)
        s = np.sin(a1 - a0)
        x = (p0 * np.sin(a1) - p1 * np.sin(a0)) / s
        y = (p1 * np.cos(a0) - p0 * np.cos(a1)) / s
        return np.column_stack([x, y])

    def turning_angles(self) -> np.ndarray:
        return reduce_angle(np.roll(self._alpha, -1) - self._alpha)

    def side_lengths(self) -> np.ndarray:
        v = self.vertices()
        d = v - np.roll(v, 1, axis=0)
        orient = np.column_stack([-np.sin(self._alpha), np.cos(self._alpha)])
        return np.einsum("ij,ij->i", d, orient)

    def translated(self, t) -> Polygon:
        t = np.asarray(t, dtype=float)
        return Polygon(self._alpha, self._p + self.normals() @ t)

    def scaled(self, c: float) -> Polygon:
        """Image under the homothety with center at the origin and ratio ``c > 0``."""
        return Polygon(self._alpha, c * self._p)

    def rotated(self, phi: float) -> Polygon:
        return Polygon(self._alpha + phi, self._p)

    def reoriented(self, signs) -> Polygon:
        """Reverse the coorientation of every line whose sign is negative."""
        signs = np.asarray(signs)
        flip = signs < 0
        return Polygon(self._alpha + np.where(flip, math.pi, 0.0), np.where(flip, -self._p, self._p))

    def repeated(self, k: int) -> Polygon:
        """The polygon traversed ``k`` times."""
        return Polygon(np.tile(self._alpha, k), np.tile(self._p, k))

    def shifted(self, s: int) -> Polygon:
        """Relabel so that line ``s`` becomes line 0."""
        return Polygon(np.roll(self._alpha, -s), np.roll(self._p, -s))


def _as_polygon(P) -> Polygon:
    if isinstance(P, Polygon):
        return P
    return Polygon.from_lines(P)


def vertices(P) -> np.ndarray:
    return _as_polygon(P).vertices()


def side_lengths(P) -> np.ndarray:
    """Signed side lengths; negative when vertex order disagrees with the side's orientation."""
    return _as_polygon(P).side_lengths()


def turning_angles(P) -> tuple[np.ndarray, int]:
    """Turning angles in ``(-pi, pi)`` and the total turning number ``k``."""
    P = _as_polygon(P)
    theta = P.turning_angles()
    if np.any(np.abs(np.sin(theta)) <= EPS_PARALLEL):
        raise DegenerateTurning("a turning angle is congruent to 0 mod pi")
    total = float(np.sum(theta)) / TWO_PI
    k = int(round(total))
    return theta, k


def alternating_sums(alpha) -> tuple[float, np.ndarray]:
    """``B = sum (-1)^(i-1) alpha_i`` and ``B_j = sum_{i=1}^{n-1} (-1)^i alpha_{j+i}``.

    Both returned modulo 2*pi; ``B_j`` is indexed from 0 (``B_j[0]`` is ``B_1``).
    """
    a = np.asarray(alpha, dtype=float).ravel()
    n = a.size
    if n < 1:
        raise EmptyInput("alternating_sums needs at least one angle")
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    B = canonical_angle(float(signs @ a))
    tail = -signs[: n - 1]  # (-1)^i for i = 1 .. n-1
    Bj = np.empty(n)
    for j in range(n):
        idx = (j + 1 + np.arange(n - 1)) % n
        Bj[j] = tail @ a[idx]
    return B, canonical_angle(Bj)


def quasiperimeter(P) -> float:
    """``sum_j p_j sin B_j(alpha)`` for an odd-gon."""
    P = _as_polygon(P)
    if P.n % 2 == 0:
        raise EvenGon("the quasiperimeter is defined for odd n only")
    _, Bj = alternating_sums(P.alpha)
    return float(P.p @ np.sin(Bj))


def qp_gradient(alpha) -> np.ndarray:
    """The vector ``sin B_j(alpha)``; the quasiperimeter is linear in p along it."""
    _, Bj = alternating_sums(alpha)
    return np.sin(Bj)


def reflect_point(mirror: CoorientedLine, u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    e = mirror.normal
    return u - 2.0 * (u @ e - mirror.p) * e


def reflect_line(mirror: CoorientedLine, l: CoorientedLine) -> CoorientedLine:
    """Mirror image of ``l``; the orienting vector is carried by the reflection."""
    alpha = 2.0 * mirror.alpha - l.alpha
    image_of_foot = reflect_point(mirror, l.foot)
    return CoorientedLine(alpha, float(image_of_foot @ unit(alpha)))


# -- isometries ---------------------------------------------------------------

IDENTITY, ROTATION, TRANSLATION, REFLECTION, GLIDE = (
    "identity",
    "rotation",
    "translation",
    "reflection",
    "glide",
)


@dataclass(frozen=True)
class Isometry:
    """A classified planar isometry ``u -> L u + t``.

    Only the parameters relevant to ``kind`` are set: ``center`` and ``angle``
    for rotations, ``vector`` for translations, ``axis`` (and ``shift`` for
    glides, measured along the axis orientation) for reflections.
    """

    kind: str
    linear: np.ndarray
    offset: np.ndarray
    center: np.ndarray | None = None
    angle: float | None = None
    vector: np.ndarray | None = None
    axis: CoorientedLine | None = None
    shift: float | None = None

    def __call__(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return u @ self.linear.T + self.offset

    @property
    def preserves_orientation(self) -> bool:
        return self.kind in (IDENTITY, ROTATION, TRANSLATION)

    def power(self, k: int) -> Isometry:
        L, t = np.eye(2), np.zeros(2)
        for _ in range(k):
            L, t = self.linear @ L, self.linear @ t + self.offset
        return classify_affine(L, t)

    def maps_line(self, l: CoorientedLine) -> CoorientedLine:
        """Image of an oriented line; orientation is transported."""
        a = self(l.foot)
        b = self(l.foot + l.direction)
        return line_through(a, b)


def classify_affine(L, t, tol: float = EPS_ISO, axis_angle: float | None = None) -> Isometry:
    """Classify the isometry ``u -> L u + t`` (``L`` orthogonal)."""
    L = np.asarray(L, dtype=float)
    t = np.asarray(t, dtype=float)
    det = float(np.linalg.det(L))
    if det > 0:
        angle = math.atan2(L[1, 0], L[0, 0])
        if abs(reduce_angle(angle)) <= tol:
            if math.hypot(*t) <= tol:
                return Isometry(IDENTITY, np.eye(2), np.zeros(2))
            return Isometry(TRANSLATION, np.eye(2), t.copy(), vector=t.copy())
        center = np.linalg.solve(np.eye(2) - L, t)
        return Isometry(ROTATION, L, t, center=center, angle=canonical_angle(angle))
    # L = I - 2 n n^T; n is the eigenvector with eigenvalue -1
    if axis_angle is None:
        w, V = np.linalg.eigh((L + L.T) / 2)
        nvec = V[:, int(np.argmin(w))]
        axis_angle = math.atan2(nvec[1], nvec[0])
    nvec = unit(axis_angle)
    d = np.array([-nvec[1], nvec[0]])
    q = 0.5 * float(t @ nvec)
    s = float(t @ d)
    axis = CoorientedLine(axis_angle, q)
    if abs(s) <= tol:
        return Isometry(REFLECTION, L, t, axis=axis)
    return Isometry(GLIDE, L, t, axis=axis, shift=s)


def compose_reflections(lines: Sequence[CoorientedLine], tol: float = EPS_ISO) -> Isometry:
    """Classify ``S = S_n o ... o S_1``, the product of reflections in ``lines``."""
    lines = list(lines)
    if not lines:
        raise EmptyInput("compose_reflections needs at least one line")
    L, t = np.eye(2), np.zeros(2)
    for l in lines:
        e = l.normal
        A = np.eye(2) - 2.0 * np.outer(e, e)
        L, t = A @ L, A @ t + 2.0 * l.p * e
    axis_angle = None
    if len(lines) % 2 == 1:
        axis_angle, _ = alternating_sums([l.alpha for l in lines])
    return classify_affine(L, t, tol=tol, axis_angle=axis_angle)


def side_reflections(P) -> Isometry:
    """The composition of reflections in the consecutive sides of ``P``."""
    return compose_reflections(_as_polygon(P).lines)


def even_rotation_closed_form(lines: Sequence[CoorientedLine]) -> tuple[float, np.ndarray, np.ndarray]:
    """Angle, translation vector ``w`` and center of ``S`` for an even number of lines.

    ``S u = R(-2B) u + w`` with ``w = sum_k 2 (-1)^k p_k e(beta_k)`` and
    ``beta_k = (-1)^k alpha_k + 2 sum_{j>k} (-1)^j alpha_j`` (1-based).  The
    center ``(w - R(2B) w) / (4 sin^2 B)`` is returned only when ``sin B != 0``.
    """
    lines = list(lines)
    n = len(lines)
    if n == 0 or n % 2:
        raise ValueError("needs a positive even number of lines")
    alpha = np.array([l.alpha for l in lines])
    p = np.array([l.p for l in lines])
    signs = np.where(np.arange(1, n + 1) % 2 == 0, 1.0, -1.0)  # (-1)^k
    B = float(-signs @ alpha)
    w = np.zeros(2)
    for k in range(n):
        beta = signs[k] * alpha[k] + 2.0 * float(signs[k + 1 :] @ alpha[k + 1 :])
        w += 2.0 * signs[k] * p[k] * unit(beta)
    angle = canonical_angle(-2.0 * B)
    sB = math.sin(B)
    center = None
    if abs(sB) > EPS_PARALLEL:
        center = (w - rotation_matrix(2.0 * B) @ w) / (4.0 * sB * sB)
    return angle, w, center
