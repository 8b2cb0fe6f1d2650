"""Involutes through fixed points and invariant lines of reflection compositions.

Let ``S`` be the composition of the reflections in the sides ``l_0, ..., l_{n-1}``
of a polygon ``Q`` (``l_0`` first).

* A fixed point ``X`` of ``S`` gives a P-involute: reflect ``X`` successively
  in ``l_0, l_1, ...``; the points obtained are its vertices.
* An invariant line ``L`` of ``S`` gives an A-involute: the successive mirror
  images of ``L`` are its sides.

Labels are chosen so that the evolute of a produced polygon reproduces ``Q``
line by line (P case) or bisector by bisector (A case).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import EvenGon, NoEvolvent
from .geometry import (
    GLIDE,
    IDENTITY,
    REFLECTION,
    ROTATION,
    TRANSLATION,
    CoorientedLine,
    Isometry,
    Polygon,
    compose_reflections,
    eps_qp,
    line_through,
    quasiperimeter,
    reflect_line,
    reflect_point,
    unit,
)

NONE, UNIQUE, ONE_PARAMETER, TWO_PARAMETER = "none", "unique", "one_parameter", "two_parameter"

RATIONAL_DENOMINATOR = 64
RATIONAL_RESIDUAL = 1e-9


@dataclass
class InvoluteFamily:
    """All involutes of ``Q`` of one kind (``"P"`` or ``"A"``).

    ``parameterization`` maps the family parameter(s) to a Polygon: a float
    for one-parameter families, a pair for two-parameter families and nothing
    for a unique involute.  ``bisectors`` lists, for A-involutes, whether each
    side of ``Q`` is the interior or exterior bisector with respect to the
    coorientation of the produced polygon.
    """

    evolute: str
    kind: str
    isometry: Isometry
    seed: object = None
    parameterization: Callable | None = None
    evolvent: Polygon | None = None
    reason: str | None = None
    bisectors: tuple | None = None
    orientation_preserved: bool | None = None
    notes: dict = field(default_factory=dict)

    def member(self, *params) -> Polygon:
        if self.parameterization is None:
            raise NoEvolvent("empty", "the family is empty")
        return self.parameterization(*params)


# -- P-involutes --------------------------------------------------------------------


def orbit(lines, seed) -> np.ndarray:
    """``seed`` followed by its successive images under the reflections in ``lines``."""
    pts = [np.asarray(seed, dtype=float)]
    for l in lines:
        pts.append(reflect_point(l, pts[-1]))
    return np.array(pts)


def p_involute_from_seed(Q: Polygon, seed) -> Polygon:
    """Polygon whose vertices are the reflected images of ``seed``.

    Side ``j`` joins the ``j``-th and ``(j+1)``-th images and is perpendicular
    to ``l_j``; ``seed`` must be fixed by ``S`` for the polygon to close.
    """
    X = orbit(Q.lines, seed)
    alpha = Q.alpha - math.pi / 2
    e = np.column_stack([np.cos(alpha), np.sin(alpha)])
    p = np.einsum("ij,ij->i", X[:-1], e)
    return Polygon(alpha, p)


def _closure_error(Q: Polygon, seed) -> float:
    X = orbit(Q.lines, seed)
    return float(np.linalg.norm(X[-1] - X[0]))


def _odd_is_reflection(Q: Polygon) -> bool:
    return abs(quasiperimeter(Q)) <= eps_qp(Q.p)


def p_involute_family(Q: Polygon) -> InvoluteFamily:
    S = compose_reflections(Q.lines)
    if Q.n % 2:
        if not _odd_is_reflection(Q):
            return InvoluteFamily("P", NONE, S, reason="glide")
        axis = S.axis
        fam = InvoluteFamily(
            "P", ONE_PARAMETER, S, seed=axis, parameterization=lambda t: p_involute_from_seed(Q, axis.point_at(t))
        )
        fam.evolvent = _try(lambda: _odd_p_evolvent(Q, fam))
        return fam
    if S.kind == ROTATION:
        P = p_involute_from_seed(Q, S.center)
        return InvoluteFamily("P", UNIQUE, S, seed=S.center, parameterization=lambda: P, evolvent=P)
    if S.kind == TRANSLATION:
        return InvoluteFamily("P", NONE, S, reason="translation")
    fam = InvoluteFamily(
        "P", TWO_PARAMETER, S, seed=None, parameterization=lambda x, y: p_involute_from_seed(Q, (x, y))
    )
    fam.evolvent = _try(lambda: _identity_p_evolvent(Q, fam))
    return fam


def _try(fn):
    try:
        return fn()
    except NoEvolvent:
        return None


def _affine_root(f: Callable[[float], float], tol: float, what: str) -> float:
    f0 = f(0.0)
    slope = f(1.0) - f0
    if abs(slope) < tol:
        raise NoEvolvent("degenerate family", f"{what} does not vary along the family")
    return -f0 / slope


def _odd_p_evolvent(Q: Polygon, fam: InvoluteFamily) -> Polygon:
    def qp(t):
        return quasiperimeter(fam.member(t))

    tol = eps_qp(Q.p)
    t = _affine_root(qp, tol, "the quasiperimeter")
    return fam.member(t)


def _translation_vector(P: Polygon) -> np.ndarray:
    return compose_reflections(P.lines).offset


def _identity_p_evolvent(Q: Polygon, fam: InvoluteFamily) -> Polygon:
    T0 = _translation_vector(fam.member(0.0, 0.0))
    J = np.column_stack(
        [_translation_vector(fam.member(1.0, 0.0)) - T0, _translation_vector(fam.member(0.0, 1.0)) - T0]
    )
    scale = 1.0 + float(np.max(np.abs(Q.p)))
    sv = np.linalg.svd(J, compute_uv=False)
    rank = int(np.sum(sv > 1e-9 * scale))
    fam.notes["solution_dimension"] = 2 - rank if rank < 2 else 0
    if rank < 2:
        raise NoEvolvent(
            "degenerate family", f"zero-translation members form a set of dimension {2 - rank} (or are absent)"
        )
    x, y = np.linalg.solve(J, -T0)
    return fam.member(float(x), float(y))


def p_evolvent(Q: Polygon) -> Polygon:
    """The distinguished P-involute that can itself be followed by further evolvents."""
    fam = p_involute_family(Q)
    if fam.kind == NONE:
        raise NoEvolvent(fam.reason, f"no P-involute: S is a {fam.reason}")
    if fam.evolvent is None:
        if Q.n % 2:
            _odd_p_evolvent(Q, fam)
        else:
            _identity_p_evolvent(Q, fam)
    return fam.evolvent


# -- A-involutes --------------------------------------------------------------------


def line_orbit(lines, L: CoorientedLine) -> list:
    out = [L]
    for l in lines:
        out.append(reflect_line(l, out[-1]))
    return out


def a_involute_from_line(Q: Polygon, L: CoorientedLine) -> tuple[Polygon, tuple, bool]:
    """A-involute generated by an ``S``-invariant line.

    Orientation is transported by each reflection, so each side of ``Q`` is
    the exterior bisector (direction ``e + e'``) of the produced polygon,
    except at the closing vertex when ``S`` reverses the orientation of ``L``.
    Returns the polygon, the bisector kinds and whether ``S`` preserves ``L``.
    """
    orb = line_orbit(Q.lines, L)
    back = orb[-1]
    preserved = math.cos(back.alpha - L.alpha) > 0
    P = Polygon.from_lines(orb[:-1])
    kinds = ["exterior"] * Q.n
    if not preserved:
        kinds[-1] = "interior"
    return P, tuple(kinds), preserved


def _perpendicular(axis: CoorientedLine, t: float) -> CoorientedLine:
    """Line through ``axis.point_at(t)`` perpendicular to the axis, normal along the axis."""
    return CoorientedLine(axis.alpha + math.pi / 2, t)


def a_involute_family(Q: Polygon) -> InvoluteFamily:
    S = compose_reflections(Q.lines)

    def build(L):
        return a_involute_from_line(Q, L)[0]

    if Q.n % 2:
        axis = S.axis
        P, kinds, keep = a_involute_from_line(Q, axis)
        if not _odd_is_reflection(Q):
            return InvoluteFamily("A", UNIQUE, S, seed=axis, parameterization=lambda: P, evolvent=P,
                                  bisectors=kinds, orientation_preserved=keep)
        fam = InvoluteFamily("A", ONE_PARAMETER, S, seed=axis,
                             parameterization=lambda t: build(_perpendicular(axis, t)),
                             bisectors=a_involute_from_line(Q, _perpendicular(axis, 0.0))[1],
                             orientation_preserved=False)
        fam.notes["axis_involute"] = P
        fam.evolvent = _try(lambda: _a_even_evolvent(Q, fam))
        return fam
    if S.kind == ROTATION:
        if abs(math.cos(S.angle) + 1.0) <= 1e-12:
            c = S.center
            fam = InvoluteFamily("A", ONE_PARAMETER, S, seed=c,
                                 parameterization=lambda phi: build(line_through(c, None, normal_angle=phi)))
            fam.bisectors = a_involute_from_line(Q, line_through(c, None, normal_angle=0.0))[1]
            fam.orientation_preserved = False
            return fam
        return InvoluteFamily("A", NONE, S, reason="rotation")
    if S.kind == TRANSLATION:
        v = S.vector
        phi = math.atan2(v[1], v[0]) + math.pi / 2
        fam = InvoluteFamily("A", ONE_PARAMETER, S, seed=v,
                             parameterization=lambda p: build(CoorientedLine(phi, p)))
        fam.bisectors = a_involute_from_line(Q, CoorientedLine(phi, 0.0))[1]
        fam.orientation_preserved = True
        return fam
    fam = InvoluteFamily("A", TWO_PARAMETER, S, parameterization=lambda phi, p: build(CoorientedLine(phi, p)))
    fam.orientation_preserved = True
    return fam


def _a_even_evolvent(Q: Polygon, fam: InvoluteFamily) -> Polygon:
    tol = eps_qp(Q.p)
    t = _affine_root(lambda t: quasiperimeter(fam.member(t)), tol, "the quasiperimeter")
    return fam.member(t)


def a_evolvent(Q: Polygon, parity: str = "odd") -> Polygon:
    """A_odd-evolvent (from the axis of ``S``) or A_even-evolvent (zero-quasiperimeter member)."""
    if Q.n % 2 == 0:
        raise EvenGon("A-evolvents are defined for odd n")
    if parity == "odd":
        axis = compose_reflections(Q.lines).axis
        return _keep_equiangular(Q, a_involute_from_line(Q, axis)[0])
    if parity != "even":
        raise ValueError("parity must be 'odd' or 'even'")
    if not _odd_is_reflection(Q):
        raise NoEvolvent("nonzero quasiperimeter", "the A_even-evolvent needs zero quasiperimeter")
    fam = a_involute_family(Q)
    if fam.evolvent is None:
        _a_even_evolvent(Q, fam)
    return _keep_equiangular(Q, fam.evolvent)


def _keep_equiangular(Q: Polygon, P: Polygon, tol: float = 1e-9) -> Polygon:
    """Restore exact equiangular directions lost to rounding.

    The direction map of A-evolvents is expanding, so a rounding error of one
    ulp in the directions grows geometrically under iteration.  Direction sets
    lying on a lattice of spacing ``pi / n`` (equiangular up to orientation)
    are fixed by the map; when input and output both lie on such a lattice
    within ``tol`` each output direction is moved onto it, keeping the
    support numbers.
    """
    step = math.pi / Q.n

    def lattice(alpha):
        offset = float(np.angle(np.mean(np.exp(2j * Q.n * alpha)))) / (2 * Q.n)
        snapped = offset + step * np.round((alpha - offset) / step)
        return snapped if np.max(np.abs(snapped - alpha)) <= tol else None

    if lattice(Q.alpha) is None:
        return P
    snapped = lattice(P.alpha)
    return P if snapped is None else Polygon(snapped, P.p)


def a_bisector_kinds(P: Polygon, Q: Polygon, tol: float = 1e-8) -> tuple | None:
    """For each vertex ``j`` of ``P``, whether ``Q``'s line ``j`` is its interior or exterior bisector.

    Interior and exterior refer to the coorientation of ``P``; ``None`` marks
    a vertex where the line is not a bisector at all.
    """
    from .a_evolute import bisectors_at, same_unoriented_line

    out = []
    scale = 1.0 + float(np.max(np.abs(P.vertices())))
    for j, l in enumerate(Q.lines):
        inner, outer = bisectors_at(P, j)
        if same_unoriented_line(inner, l, tol * scale):
            out.append("interior")
        elif same_unoriented_line(outer, l, tol * scale):
            out.append("exterior")
        else:
            out.append(None)
    return tuple(out)


# -- k-fold constructions ---------------------------------------------------------


def rational_turn(angle: float, max_den: int = RATIONAL_DENOMINATOR, tol: float = RATIONAL_RESIDUAL) -> Fraction | None:
    """``angle / (2 pi)`` as a fraction with small denominator, when it is one."""
    x = (angle / (2 * math.pi)) % 1.0
    f = Fraction(x).limit_denominator(max_den)
    if abs(float(f) - x) <= tol or abs(float(f) - x - 1) <= tol:
        return f
    return None


def isometry_period(S: Isometry) -> int | None:
    """Smallest ``k >= 1`` with ``S^k`` the identity, if one is detected."""
    if S.kind == IDENTITY:
        return 1
    if S.kind == REFLECTION:
        return 2
    if S.kind == ROTATION:
        f = rational_turn(S.angle)
        return None if f is None else f.denominator
    return None


def p_involute_kfold(Q: Polygon, k: int, seed) -> Polygon:
    """kn-gon whose P-evolute is ``Q`` traversed ``k`` times; ``seed`` must have period ``k``."""
    return p_involute_from_seed(Q.repeated(k), seed)


def a_involute_kfold(Q: Polygon, k: int, L: CoorientedLine) -> Polygon:
    """kn-gon generated by an ``S^k``-invariant line."""
    return a_involute_from_line(Q.repeated(k), L)[0]


# -- pedal angle map -------------------------------------------------------------


def pedal_matrix(n: int) -> np.ndarray:
    """Circulant matrix of ``alpha*_i = sum_k (-1)^k alpha_{i+k}``."""
    if n % 2 == 0:
        raise EvenGon("the pedal angle map is defined for odd n")
    M = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for k in range(n):
            M[i, (i + k) % n] = (-1) ** k
    return M


def pedal_angle_map(alpha) -> np.ndarray:
    """Directions of the A_odd-evolvent sides, modulo pi."""
    alpha = np.asarray(alpha, dtype=float)
    M = pedal_matrix(alpha.size)
    return np.mod(M @ alpha, math.pi)


def ergodic_spectrum(n: int) -> np.ndarray:
    if n % 2 == 0:
        raise EvenGon("the pedal angle map is defined for odd n")
    if n < 3:
        raise ValueError("n must be at least 3")
    w = np.exp(2j * np.pi * np.arange(n) / n)
    return 2.0 / (1.0 + w)


# A safe prime p = 2q + 1 with p = 3 mod 8, so 2 is a primitive root mod p.  The
# pedal map has determinant a power of 2; a modulus in which 2 has small order
# (2**61 - 1, where it has order 61) forces short periodic orbits.
MODULUS = (1 << 62) - 10565


def pedal_orbit(x0, steps: int) -> np.ndarray:
    """Exact orbit of the pedal map on the lattice ``(pi / MODULUS) Z^n``.

    ``x0`` holds integers in ``[0, MODULUS)``; the returned array holds the
    quotient-torus coordinates ``(alpha_i - alpha_0) / pi`` in ``[0, 1)`` for
    every step.  Floating-point iteration of an expanding map loses one bit
    per step, so the orbit is kept on an exact lattice instead.
    """
    x = [int(v) % MODULUS for v in x0]
    n = len(x)
    if n % 2 == 0:
        raise EvenGon("the pedal angle map is defined for odd n")
    signs = [(-1) ** k for k in range(n)]
    out = np.empty((steps, n - 1))
    for s in range(steps):
        x = [sum(signs[k] * x[(i + k) % n] for k in range(n)) % MODULUS for i in range(n)]
        out[s] = [((x[i] - x[0]) % MODULUS) / MODULUS for i in range(1, n)]
    return out


def orbit_histogram(coords: np.ndarray, bins: int = 10) -> np.ndarray:
    hist, _ = np.histogramdd(coords, bins=bins, range=[(0.0, 1.0)] * coords.shape[1])
    return hist
