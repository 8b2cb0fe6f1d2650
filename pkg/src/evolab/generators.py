"""Seeded random inputs.

All randomness comes from ``numpy.random.PCG64``; independent trials draw
from child streams obtained with ``SeedSequence.spawn``, so a trial's input
depends only on the root seed and the trial index.
"""

from __future__ import annotations

import math

import numpy as np

from .geometry import Polygon, qp_gradient, quasiperimeter
from .smooth import SupportPoly

MIN_SIN = 1e-6
MAX_TRIES = 10_000


def rng(seed: int | None) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def trial_rngs(seed: int, trials: int) -> list:
    """One independent generator per trial."""
    return [np.random.Generator(np.random.PCG64(s)) for s in np.random.SeedSequence(seed).spawn(trials)]


def _angles_from_turning(theta, alpha0: float) -> np.ndarray:
    return alpha0 + np.concatenate([[0.0], np.cumsum(theta[:-1])])


def random_turning(g: np.random.Generator, n: int, total: float = 2 * math.pi) -> np.ndarray:
    """Turning angles uniform on the positive simplex scaled to ``total``."""
    for _ in range(MAX_TRIES):
        theta = g.dirichlet(np.ones(n)) * total
        if np.all(np.abs(np.sin(theta)) > MIN_SIN):
            return theta
    raise RuntimeError("could not sample admissible turning angles")


def random_ngon(g: np.random.Generator, n: int) -> Polygon:
    """Hedgehog with uniform simplex turning angles and ``p`` uniform in [-1, 1]."""
    theta = random_turning(g, n)
    alpha = _angles_from_turning(theta, g.uniform(0.0, 2 * math.pi))
    return Polygon(alpha, g.uniform(-1.0, 1.0, n))


def project_zero_qp(P: Polygon) -> Polygon:
    """Orthogonal projection of ``p`` onto the zero-quasiperimeter hyperplane (odd n)."""
    g = qp_gradient(P.alpha)
    return P.with_p(P.p - g * quasiperimeter(P) / float(g @ g))


def random_zero_qp(g: np.random.Generator, n: int) -> Polygon:
    return project_zero_qp(random_ngon(g, n))


def random_equiangular(g: np.random.Generator, n: int, zero_mean: bool = False) -> Polygon:
    alpha = 2 * math.pi * np.arange(1, n + 1) / n
    p = g.uniform(-1.0, 1.0, n)
    if zero_mean:
        p = p - p.mean()
    return Polygon(alpha, p)


def random_acute_triangle(g: np.random.Generator) -> np.ndarray:
    """Counterclockwise vertices of a triangle with all angles below 80 degrees."""
    limit = math.radians(80.0)
    for _ in range(MAX_TRIES):
        V = g.uniform(-1.0, 1.0, (3, 2))
        cross = (V[1, 0] - V[0, 0]) * (V[2, 1] - V[0, 1]) - (V[1, 1] - V[0, 1]) * (V[2, 0] - V[0, 0])
        if abs(cross) < 0.05:
            continue
        if cross < 0:
            V = V[::-1].copy()
        angles = []
        for i in range(3):
            a, b = V[(i + 1) % 3] - V[i], V[(i + 2) % 3] - V[i]
            angles.append(math.acos(np.clip(a @ b / np.linalg.norm(a) / np.linalg.norm(b), -1, 1)))
        if max(angles) < limit:
            return V
    raise RuntimeError("could not sample an acute triangle")


def random_parallel_hexagon(g: np.random.Generator) -> Polygon:
    """Hexagon whose opposite sides are parallel with opposite coorientations."""
    for _ in range(MAX_TRIES):
        half = g.dirichlet(np.ones(3)) * math.pi
        theta = np.concatenate([half, half])
        if np.all(np.abs(np.sin(theta)) > 1e-2):
            alpha = _angles_from_turning(theta, g.uniform(0.0, 2 * math.pi))
            return Polygon(alpha, g.uniform(-1.0, 1.0, 6))
    raise RuntimeError("could not sample a hexagon")


def degenerate_pentagon_turning(g: np.random.Generator, min_sin: float = 0.05) -> np.ndarray:
    """Turning angles of a pentagon whose third P-evolute is a point.

    Draw ``beta`` with ``sum sin(beta) = 0`` and ``sum beta = 2 pi``, then set
    ``theta[j] = (beta[j] + beta[j+1]) / 2``.
    """
    for _ in range(MAX_TRIES):
        b = g.uniform(-math.pi, math.pi, 3)
        s = 2 * math.pi - b.sum()  # beta_4 + beta_5
        c = -np.sin(b).sum() / (2 * math.sin(s / 2))
        if abs(c) > 1 or abs(math.sin(s / 2)) < 0.1:
            continue
        d = 2 * math.acos(c)  # beta_4 - beta_5
        beta = np.concatenate([b, [(s + d) / 2, (s - d) / 2]])
        theta = 0.5 * (beta + np.roll(beta, -1))
        theta = np.angle(np.exp(1j * theta))
        if np.all(np.abs(np.sin(theta)) > min_sin):
            return theta
    raise RuntimeError("could not sample degenerate pentagon angles")


def degenerate_pentagon(g: np.random.Generator) -> Polygon:
    theta = degenerate_pentagon_turning(g)
    alpha = _angles_from_turning(theta, g.uniform(0.0, 2 * math.pi))
    return Polygon(alpha, g.uniform(-1.0, 1.0, 5))


def random_support_poly(g: np.random.Generator, degree: int = 6, zero_mean: bool = True) -> SupportPoly:
    """Trig polynomial with coefficients uniform in [-1, 1] for orders up to ``degree``."""
    coeffs = {k: tuple(g.uniform(-1.0, 1.0, 2)) for k in range(1, degree + 1)}
    if not zero_mean:
        coeffs[0] = (float(g.uniform(-1.0, 1.0)), 0.0)
    return SupportPoly(1, coeffs)


GENERATORS = {
    "random-ngon": random_ngon,
    "random-zero-qp": random_zero_qp,
    "equiangular": random_equiangular,
}


def from_spec(spec: str, seed: int) -> Polygon:
    """Polygon from ``"name:n"`` and a seed, e.g. ``"random-ngon:6"``."""
    name, _, arg = spec.partition(":")
    if name not in GENERATORS:
        raise ValueError(f"unknown generator {name!r}; expected one of {sorted(GENERATORS)}")
    try:
        n = int(arg)
    except ValueError:
        raise ValueError(f"generator {name!r} needs an integer size, got {arg!r}") from None
    if n < 3:
        raise ValueError("polygons need at least 3 sides")
    return GENERATORS[name](rng(seed), n)
