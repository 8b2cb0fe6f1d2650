"""Iterating polygon transforms: normalization, traces and shape comparisons."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import Collapsed, EvolabError
from .geometry import EPS_ANGLE, Polygon

EPS_COLLAPSE = 1e-10
EPS_HOM = 1e-8
PERIOD_TOL = 1e-6
MAX_PERIOD = 12


def _collapse_tol(V: np.ndarray) -> float:
    return EPS_COLLAPSE * (1.0 + float(np.max(np.abs(V))))


def spread(P: Polygon) -> float:
    """Largest distance from a vertex to the vertex centroid."""
    V = P.vertices()
    return float(np.max(np.linalg.norm(V - V.mean(axis=0), axis=1)))


def diameter(P: Polygon) -> float:
    V = P.vertices()
    d = V[:, None, :] - V[None, :, :]
    return float(np.sqrt(np.max(np.sum(d * d, axis=-1))))


def normalize(P: Polygon) -> Polygon:
    """Move the vertex centroid to the origin and scale the farthest vertex to distance 1."""
    V = P.vertices()
    c = V.mean(axis=0)
    r = float(np.max(np.linalg.norm(V - c, axis=1)))
    if r <= _collapse_tol(V):
        raise Collapsed("all vertices coincide")
    return P.translated(-c).scaled(1.0 / r)


def transform_by_name(name: str):
    from . import a_evolute, involute, p_evolute

    table = {
        "p_evolute": p_evolute.p_evolute_transform,
        "a_o_evolute": a_evolute.a_o_evolute,
        "a_c_evolute": a_evolute.a_c_evolute,
        "p_evolvent": involute.p_evolvent,
        "a_evolvent": lambda Q: involute.a_evolvent(Q, "odd" if Q.n % 2 else "even"),
    }
    try:
        return table[name]
    except KeyError:
        raise ValueError(f"unknown transform {name!r}; expected one of {sorted(table)}") from None


TRANSFORMS = ("p_evolute", "a_o_evolute", "a_c_evolute", "p_evolvent", "a_evolvent")


@dataclass
class IterationTrace:
    transform: str
    steps: list  # normalized polygons, steps[0] is the normalized input
    scale_log: list = field(default_factory=list)  # log growth per step
    drift: list = field(default_factory=list)  # centroid before normalization
    classification: str | None = None
    period_estimate: int | None = None
    event: str | None = None
    event_step: int | None = None

    @property
    def last(self) -> Polygon:
        return self.steps[-1]


def iterate(transform: str, P: Polygon, steps: int) -> IterationTrace:
    """Apply a named transform ``steps`` times, normalizing after each step.

    Terminal geometric events stop the iteration and are recorded in the
    trace instead of being raised.
    """
    f = transform_by_name(transform)
    trace = IterationTrace(transform, [normalize(P)])
    cur = trace.steps[0]
    for k in range(steps):
        try:
            nxt = f(cur)
            V = nxt.vertices()
            c = V.mean(axis=0)
            r = float(np.max(np.linalg.norm(V - c, axis=1)))
            cur = normalize(nxt)
        except Collapsed:
            trace.event, trace.event_step = "Collapsed", k + 1
            trace.classification = "collapsed"
            break
        except EvolabError as exc:
            trace.event, trace.event_step = type(exc).__name__, k + 1
            trace.classification = "terminated"
            break
        trace.steps.append(cur)
        trace.scale_log.append(math.log(r))
        trace.drift.append(c)
    if trace.classification is None and transform == "p_evolute":
        from .p_evolute import spectral_report

        trace.classification = spectral_report(P.turning_angles(), P.alpha).max_modulus_class
    trace.period_estimate = estimate_period(trace.steps)
    return trace


def vertex_distance(P: Polygon, Q: Polygon, shifts: bool = True) -> float:
    """Sup distance between vertex lists, minimized over cyclic relabelings."""
    A, B = P.vertices(), Q.vertices()
    if A.shape != B.shape:
        return math.inf
    rng = range(A.shape[0]) if shifts else (0,)
    return min(float(np.max(np.linalg.norm(A - np.roll(B, s, axis=0), axis=1))) for s in rng)


def estimate_period(steps: list, tol: float = PERIOD_TOL, max_q: int = MAX_PERIOD) -> int | None:
    """Smallest ``q <= max_q`` with ``P_N`` close to ``P_{N+q}`` over the trailing quarter."""
    total = len(steps)
    if total < 8:
        return None
    start = total - max(total // 4, 2)
    for q in range(1, max_q + 1):
        idx = [N for N in range(start - q, total - q) if N >= 0]
        if len(idx) < 1:
            continue
        if all(vertex_distance(steps[N], steps[N + q]) < tol for N in idx):
            return q
    return None


@dataclass(frozen=True)
class Homothety:
    center: np.ndarray | None
    ratio: float
    residual: float


def homothety_check(P: Polygon, Q: Polygon, tol: float = EPS_HOM) -> Homothety | None:
    """Least-squares fit ``Q = c + r (P - c)`` over corresponding vertices.

    Returns the fit when the largest vertex residual is below ``tol`` times
    the diameter of the larger polygon, otherwise ``None``.
    """
    if P.n != Q.n:
        return None
    d = np.sin(Q.alpha - P.alpha)
    if np.any(np.abs(d) > EPS_ANGLE * 1e3):
        return None
    A, B = P.vertices(), Q.vertices()
    n = A.shape[0]
    M = np.zeros((2 * n, 3))
    M[0::2, 0], M[1::2, 0] = A[:, 0], A[:, 1]
    M[0::2, 1] = 1.0
    M[1::2, 2] = 1.0
    sol, *_ = np.linalg.lstsq(M, B.reshape(-1), rcond=None)
    r, t = float(sol[0]), sol[1:]
    res = float(np.max(np.linalg.norm(B - (r * A + t), axis=1)))
    scale = max(diameter(P) * max(abs(r), 1.0), diameter(Q))
    if res > tol * max(scale, np.finfo(float).tiny):
        return None
    if abs(1.0 - r) <= 1e-12:
        if float(np.linalg.norm(t)) > tol * max(scale, np.finfo(float).tiny):
            return None
        return Homothety(A.mean(axis=0), r, res)
    return Homothety(t / (1.0 - r), r, res)


def line_set_distance(P: Polygon, Q: Polygon, oriented: bool = False) -> float:
    """Matching distance between the line sets of ``P`` and ``Q``."""
    if P.n != Q.n:
        return math.inf

    def feats(X: Polygon):
        if oriented:
            return np.column_stack([np.cos(X.alpha), np.sin(X.alpha), X.p])
        # reversing (a, p) -> (a + pi, -p) leaves the foot point p*e and the axis fixed
        e = X.normals()
        a2 = np.column_stack([np.cos(2 * X.alpha), np.sin(2 * X.alpha)])
        foot = e * X.p[:, None]
        return np.column_stack([a2, foot])

    fa, fb = feats(P), feats(Q)
    cost = np.linalg.norm(fa[:, None, :] - fb[None, :, :], axis=-1)
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())


def rotation_similarity(P: Polygon, Q: Polygon):
    """Best rotation angle taking normalized ``P`` onto normalized ``Q`` and the residual.

    Both are assumed normalized (centroid at the origin).  Cyclic relabelings
    and the reversed order are tried.
    """
    A = P.vertices()
    B = Q.vertices()
    if A.shape != B.shape:
        return None, math.inf
    za = A[:, 0] + 1j * A[:, 1]
    zb = B[:, 0] + 1j * B[:, 1]
    best = (None, math.inf)
    for cand in (zb, zb[::-1]):
        for s in range(len(za)):
            w = np.roll(cand, s)
            k = np.vdot(za, w)
            if abs(k) == 0:
                continue
            u = k / abs(k)
            res = float(np.max(np.abs(w - u * za)))
            if res < best[1]:
                best = (float(np.angle(u)), res)
    return best
