"""Smooth hedgehogs given by trigonometric-polynomial support functions.

A :class:`SupportPoly` stores ``p(alpha) = sum_k a_k cos(k alpha/q) + b_k sin(k alpha/q)``
sparsely, optionally plus the cycloidal term ``-alpha cos(alpha)``.  The evolute
acts on coefficients exactly: differentiate, then shift the argument by a
quarter turn.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import NonzeroLength

ZERO_TOL = 1e-12


def _quarter_shift(k: int, q: int) -> tuple[float, float]:
    """``cos`` and ``sin`` of ``(k/q)*pi/2``, exact when that is a multiple of pi/2."""
    if k % q == 0:
        r = (k // q) % 4
        return ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))[r]
    s = k * math.pi / (2 * q)
    return math.cos(s), math.sin(s)


@dataclass(frozen=True)
class SupportPoly:
    """Sparse trigonometric polynomial; ``coeffs[k] = (a, b)`` at frequency ``k/q``.

    The constant term lives at ``k = 0`` (its ``b`` is ignored).
    """

    q: int = 1
    coeffs: dict = field(default_factory=dict)
    cycloidal: bool = False

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be a positive integer")
        if self.cycloidal and self.q != 1:
            raise ValueError("the cycloidal term needs q = 1")
        clean = {}
        for k, ab in self.coeffs.items():
            k = int(k)
            if k < 0:
                raise ValueError("harmonic indices must be non-negative")
            a, b = float(ab[0]), float(ab[1])
            if k == 0:
                b = 0.0
            if a != 0.0 or b != 0.0:
                clean[k] = (a, b)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def from_terms(cls, terms, q: int = 1, cycloidal: bool = False) -> SupportPoly:
        """Build from ``(k, a, b)`` triples; repeated indices add up."""
        acc: dict = {}
        for k, a, b in terms:
            a0, b0 = acc.get(int(k), (0.0, 0.0))
            acc[int(k)] = (a0 + a, b0 + b)
        return cls(q, acc, cycloidal)

    def coefficient(self, k: int) -> tuple[float, float]:
        return self.coeffs.get(k, (0.0, 0.0))

    @property
    def mean(self) -> float:
        return self.coefficient(0)[0]

    def frequencies(self):
        return [Fraction(k, self.q) for k in self.coeffs]

    def magnitude(self, k: int) -> float:
        a, b = self.coefficient(k)
        return abs(a) if k == 0 else math.hypot(a, b)

    def degree(self) -> Fraction:
        return max(self.frequencies(), default=Fraction(0))

    def __call__(self, alpha):
        return support_value(self, alpha)

    def scaled(self, c: float) -> SupportPoly:
        return SupportPoly(self.q, {k: (c * a, c * b) for k, (a, b) in self.coeffs.items()}, self.cycloidal)

    def without(self, ks) -> SupportPoly:
        ks = set(ks)
        return SupportPoly(self.q, {k: v for k, v in self.coeffs.items() if k not in ks}, self.cycloidal)

    def period(self) -> float:
        return 2.0 * math.pi * self.q


def support_value(s: SupportPoly, alpha):
    alpha = np.asarray(alpha, dtype=float)
    out = np.zeros_like(alpha)
    for k, (a, b) in s.coeffs.items():
        w = k / s.q
        out = out + a * np.cos(w * alpha) + b * np.sin(w * alpha)
    if s.cycloidal:
        out = out - alpha * np.cos(alpha)
    return out if out.ndim else float(out)


def support_derivative(s: SupportPoly, alpha):
    alpha = np.asarray(alpha, dtype=float)
    out = np.zeros_like(alpha)
    for k, (a, b) in s.coeffs.items():
        w = k / s.q
        out = out + w * (-a * np.sin(w * alpha) + b * np.cos(w * alpha))
    if s.cycloidal:
        out = out - np.cos(alpha) + alpha * np.sin(alpha)
    return out if out.ndim else float(out)


def curve_point(s: SupportPoly, alpha):
    """Point of the hedgehog where the tangent has normal ``e_alpha``."""
    p = support_value(s, alpha)
    dp = support_derivative(s, alpha)
    c, si = np.cos(alpha), np.sin(alpha)
    return np.stack([p * c - dp * si, p * si + dp * c], axis=-1)


def _evolute_coeffs(coeffs: dict, q: int) -> dict:
    out = {}
    for k, (a, b) in coeffs.items():
        if k == 0:
            continue
        w = k / q
        c, s = _quarter_shift(k, q)
        out[k] = (w * (a * s + b * c), w * (-a * c + b * s))
    return out


def _evolvent_coeffs(coeffs: dict, q: int) -> dict:
    out = {}
    for k, (a, b) in coeffs.items():
        if k == 0:
            continue
        w = k / q
        c, s = _quarter_shift(k, q)
        # the forward map is w times an orthogonal matrix
        out[k] = ((a * s - b * c) / w, (a * c + b * s) / w)
    return out


def _add(coeffs: dict, k: int, a: float, b: float) -> dict:
    out = dict(coeffs)
    a0, b0 = out.get(k, (0.0, 0.0))
    out[k] = (a0 + a, b0 + b)
    return out


def evolute_smooth(s: SupportPoly) -> SupportPoly:
    """Support function of the evolute: ``p'(alpha - pi/2)``."""
    coeffs = _evolute_coeffs(s.coeffs, s.q)
    if s.cycloidal:
        coeffs = _add(coeffs, 1, math.pi / 2, -1.0)
    return SupportPoly(s.q, coeffs, s.cycloidal)


def _check_zero_mean(s: SupportPoly, tol: float):
    scale = 1.0 + max((max(abs(a), abs(b)) for a, b in s.coeffs.values()), default=0.0)
    if abs(s.mean) > tol * scale:
        raise NonzeroLength(f"support function has mean {s.mean!r}; the evolvent needs zero mean")


def evolvent_smooth(s: SupportPoly, tol: float = ZERO_TOL) -> SupportPoly:
    """The unique zero-mean involute of a zero-mean support function."""
    _check_zero_mean(s, tol)
    coeffs = dict(s.coeffs)
    coeffs.pop(0, None)
    if s.cycloidal:
        coeffs = _add(coeffs, 1, -math.pi / 2, 1.0)
    return SupportPoly(s.q, _evolvent_coeffs(coeffs, s.q), s.cycloidal)


def cycloid_step(f: SupportPoly) -> SupportPoly:
    """Periodic part of the evolute of ``-alpha cos(alpha) + f(alpha)``."""
    if f.q != 1:
        raise ValueError("cycloid_step needs q = 1")
    g = evolute_smooth(SupportPoly(1, f.coeffs, True))
    return SupportPoly(1, g.coeffs, False)


def cycloid_step_inverse(f: SupportPoly, tol: float = ZERO_TOL) -> SupportPoly:
    if f.q != 1:
        raise ValueError("cycloid_step_inverse needs q = 1")
    g = evolvent_smooth(SupportPoly(1, f.coeffs, True), tol)
    return SupportPoly(1, g.coeffs, False)


def steiner_point_smooth(s: SupportPoly) -> np.ndarray:
    """Curvature centroid of a closed hedgehog: its first-harmonic coefficients."""
    if s.q != 1 or s.cycloidal:
        raise ValueError("the Steiner point needs a closed hedgehog (q = 1, not cycloidal)")
    return np.array(s.coefficient(1))


def steiner_point_quadrature(s: SupportPoly, nodes: int = 10_000) -> np.ndarray:
    """Trapezoid-rule evaluation of the curvature-centroid integral."""
    alpha = np.linspace(0.0, 2 * math.pi, nodes, endpoint=False)
    p = support_value(s, alpha)
    h = 2 * math.pi / nodes
    return np.array([p @ np.cos(alpha), p @ np.sin(alpha)]) * h / math.pi


@dataclass
class SmoothTrace:
    steps: list
    dominant: list  # dominant frequency per step, as a Fraction


def _shape(s: SupportPoly) -> SupportPoly:
    """Drop translation (frequency 1) and scale the largest harmonic to unit size."""
    t = s.without([s.q])
    mags = [t.magnitude(k) for k in t.coeffs]
    top = max(mags, default=0.0)
    if top == 0.0:
        return t
    return t.scaled(1.0 / top)


def dominant_frequency(s: SupportPoly, ignore_translation: bool = True) -> Fraction | None:
    t = s.without([s.q]) if ignore_translation else s
    if not t.coeffs:
        return None
    k = max(t.coeffs, key=lambda k: (t.magnitude(k), -k))
    return Fraction(k, t.q)


def iterate_smooth(s: SupportPoly, steps: int, mode: str = "evolute") -> SmoothTrace:
    """Iterate evolutes or evolvents, recording normalized shapes.

    Shapes are taken up to translation and scale, so the first harmonic is
    dropped before rescaling.  Cycloidal inputs are not rescaled (the
    cycloidal term fixes the scale); their first harmonic is kept because it
    carries the limit.
    """
    if mode not in ("evolute", "evolvent"):
        raise ValueError("mode must be 'evolute' or 'evolvent'")
    step = evolute_smooth if mode == "evolute" else evolvent_smooth
    cur = s if s.cycloidal else _shape(s)
    out, dom = [cur], [dominant_frequency(cur, not s.cycloidal)]
    for _ in range(steps):
        nxt = step(cur)
        cur = nxt if s.cycloidal else _shape(nxt)
        out.append(cur)
        dom.append(dominant_frequency(cur, not s.cycloidal))
    return SmoothTrace(out, dom)


def sample_curve(s: SupportPoly, num: int = 400) -> np.ndarray:
    """``num`` points on the curve over one period (columns alpha, x, y)."""
    alpha = np.linspace(0.0, s.period(), num, endpoint=False)
    xy = curve_point(s, alpha)
    return np.column_stack([alpha, xy])
