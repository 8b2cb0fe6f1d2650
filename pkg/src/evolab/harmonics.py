"""Discrete Fourier analysis of equiangular polygons.

Harmonics are indexed by the side label, not by the actual normal angle:
side ``j`` (1-based) of an equiangular polygon carries the phase
``2*pi*j/n``.  For the standard position ``alpha_j = 2*pi*j/n`` this is the
usual picture; for any other starting direction the whole picture is rotated
by ``alpha_1 - 2*pi/n``, which the decomposition remembers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IndexOutOfRange, NotConvex, NotEquiangular
from .geometry import EPS_ANGLE, TWO_PI, Polygon, reduce_angle, rotation_matrix


def phases(n: int) -> np.ndarray:
    """``2*pi*j/n`` for ``j = 1..n``."""
    return TWO_PI * np.arange(1, n + 1) / n


def standard_angles(n: int, alpha1: float | None = None) -> np.ndarray:
    """Normal angles of an equiangular n-gon starting at ``alpha1`` (default ``2*pi/n``)."""
    if alpha1 is None:
        alpha1 = TWO_PI / n
    return alpha1 + TWO_PI * np.arange(n) / n


def harmonic_support(n: int, m: int, kind: str = "cos") -> np.ndarray:
    """Support numbers of ``C_m(n)`` or ``S_m(n)``; any integer ``m`` is accepted."""
    phi = m * phases(n)
    if kind == "cos":
        # cos(pi*j) must be exactly +-1 for the half harmonic
        out = np.cos(phi)
        if 2 * m % n == 0:
            out = np.rint(out)
        return out
    if kind == "sin":
        out = np.sin(phi)
        if 2 * m % n == 0:
            out = np.zeros(n)
        return out
    raise ValueError("kind must be 'cos' or 'sin'")


def harmonic_polygon(n: int, m: int, kind: str = "cos") -> Polygon:
    """The discrete harmonic ``C_m(n)`` or ``S_m(n)`` in standard position."""
    if n < 3:
        raise IndexOutOfRange("need n >= 3")
    if kind == "cos":
        if not (0 <= m and 2 * m <= n):
            raise IndexOutOfRange(f"C_{m}({n}) needs 0 <= m <= n/2")
    elif kind == "sin":
        if not (0 < m and 2 * m < n):
            raise IndexOutOfRange(f"S_{m}({n}) needs 0 < m < n/2")
    else:
        raise ValueError("kind must be 'cos' or 'sin'")
    return Polygon(standard_angles(n), harmonic_support(n, m, kind))


def hypocycloid(n: int, m: int, a: float, b: float, alpha1: float | None = None) -> Polygon:
    """``a C_m + b S_m``, an equiangular polygon tangent to a hypocycloid of order m."""
    p = a * harmonic_support(n, m, "cos") + b * harmonic_support(n, m, "sin")
    return Polygon(standard_angles(n, alpha1), p)


def is_equiangular(P: Polygon, tol: float = EPS_ANGLE) -> bool:
    theta = P.turning_angles()
    return bool(np.all(np.abs(theta - TWO_PI / P.n) <= tol))


@dataclass(frozen=True)
class HarmonicDecomposition:
    """``p = a0/2 + sum_m (a_m cos + b_m sin) [+ a_half/2 (-1)^j]`` over side phases."""

    n: int
    a0: float
    terms: list = field(default_factory=list)  # (m, a_m, b_m) for 1 <= m < n/2
    a_half: float | None = None
    alpha1: float = 0.0

    def coefficient(self, m: int) -> tuple[float, float]:
        if m == 0:
            return self.a0, 0.0
        if 2 * m == self.n:
            return self.a_half, 0.0
        for k, a, b in self.terms:
            if k == m:
                return a, b
        raise IndexOutOfRange(f"no harmonic {m} for n={self.n}")

    def magnitude(self, m: int) -> float:
        a, b = self.coefficient(m)
        return math.hypot(a, b)

    def component(self, m: int) -> np.ndarray:
        """Support vector of the order-m summand alone."""
        n = self.n
        if m == 0:
            return np.full(n, self.a0 / 2)
        if 2 * m == n:
            return self.a_half / 2 * harmonic_support(n, m, "cos")
        a, b = self.coefficient(m)
        return a * harmonic_support(n, m, "cos") + b * harmonic_support(n, m, "sin")

    def support(self) -> np.ndarray:
        out = np.full(self.n, self.a0 / 2)
        for m, a, b in self.terms:
            out = out + a * harmonic_support(self.n, m, "cos") + b * harmonic_support(self.n, m, "sin")
        if self.a_half is not None:
            out = out + self.a_half / 2 * harmonic_support(self.n, self.n // 2, "cos")
        return out

    def reconstruct(self) -> Polygon:
        return Polygon(standard_angles(self.n, self.alpha1), self.support())

    def spectrum_rows(self):
        """``(m, a_m, b_m, magnitude)`` for every order, including 0 and n/2."""
        rows = [(0, self.a0, 0.0, abs(self.a0))]
        rows += [(m, a, b, math.hypot(a, b)) for m, a, b in self.terms]
        if self.a_half is not None:
            rows.append((self.n // 2, self.a_half, 0.0, abs(self.a_half)))
        return rows


def decompose_support(p, alpha1: float | None = None) -> HarmonicDecomposition:
    """Decompose a support vector of an equiangular polygon by orthogonal projection."""
    p = np.asarray(p, dtype=float)
    n = p.size
    scale = 2.0 / n
    terms = []
    for m in range(1, (n - 1) // 2 + 1):
        a = scale * float(p @ harmonic_support(n, m, "cos"))
        b = scale * float(p @ harmonic_support(n, m, "sin"))
        terms.append((m, a, b))
    a_half = None
    if n % 2 == 0:
        a_half = scale * float(p @ harmonic_support(n, n // 2, "cos"))
    if alpha1 is None:
        alpha1 = TWO_PI / n
    return HarmonicDecomposition(n, scale * float(p.sum()), terms, a_half, float(alpha1))


def decompose_equiangular(P: Polygon, tol: float = EPS_ANGLE) -> HarmonicDecomposition:
    if not is_equiangular(P, tol):
        raise NotEquiangular("turning angles are not all 2*pi/n")
    return decompose_support(P.p, float(P.alpha[0]))


def project_onto_orders(P: Polygon, orders) -> tuple[np.ndarray, float]:
    """Projection of ``P.p`` onto the given harmonic orders and the relative residual."""
    dec = decompose_equiangular(P, tol=1e-6)
    proj = sum((dec.component(m) for m in orders), np.zeros(P.n))
    norm = float(np.linalg.norm(P.p))
    resid = float(np.linalg.norm(P.p - proj))
    return proj, (resid / norm if norm > 0 else 0.0)


def vertex_centroid(P: Polygon) -> np.ndarray:
    return P.vertices().mean(axis=0)


def vertex_centroid_equiangular(P: Polygon) -> np.ndarray:
    """``(2/n) sum p_j v_j`` with ``v_j`` the side normals; agrees with the vertex mean."""
    if not is_equiangular(P):
        raise NotEquiangular("closed form needs an equiangular polygon")
    return 2.0 / P.n * (P.p @ P.normals())


def classical_steiner(P: Polygon) -> np.ndarray:
    """Exterior-angle weighted vertex centroid of a convex polygon."""
    theta = P.turning_angles()
    ell = P.side_lengths()
    if np.any(theta <= 0) or np.any(ell <= 0):
        raise NotConvex("classical Steiner point needs positive turning angles and side lengths")
    return (theta @ P.vertices()) / TWO_PI


def rotate_point(u, phi: float) -> np.ndarray:
    return rotation_matrix(phi) @ np.asarray(u, dtype=float)


def phase_offset(dec: HarmonicDecomposition) -> float:
    """Rotation relating the decomposition's picture to the standard position."""
    return reduce_angle(dec.alpha1 - TWO_PI / dec.n)
