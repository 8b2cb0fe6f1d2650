"""Numerical acceptance checks, one function per check.

Each function returns a :class:`CheckResult` holding the worst measured
value, the tolerance it is compared against and the verdict.  The checks are
deterministic for a given seed.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import generators as gen
from .a_evolute import a_o_evolute
from .dynamics import diameter, homothety_check, iterate, line_set_distance, spread
from .errors import EvolabError
from .geometry import REFLECTION, Polygon, compose_reflections, eps_qp, quasiperimeter
from .harmonics import harmonic_support, hypocycloid, project_onto_orders
from .involute import (
    MODULUS,
    a_evolvent,
    ergodic_spectrum,
    orbit_histogram,
    p_evolvent,
    p_involute_family,
    pedal_matrix,
    pedal_orbit,
)
from .p_evolute import (
    equiangular_eigenvalues,
    m_matrix,
    multiset_distance,
    odd_trace_residuals,
    p_evolute_power,
    p_evolute_transform,
    p_matrix,
    spectral_report,
)
from .smooth import evolute_smooth, iterate_smooth, steiner_point_smooth


@dataclass
class CheckResult:
    number: int
    name: str
    measured: float
    tolerance: float
    passed: bool
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} {self.number:2d} {self.name}: measured {self.measured:.3e} vs tol {self.tolerance:.1e}"


def _result(number, name, measured, tol, t0, passed=None, **details) -> CheckResult:
    measured = float(measured)
    ok = bool(measured < tol) if passed is None else bool(passed and measured < tol)
    return CheckResult(number, name, measured, tol, ok, time.perf_counter() - t0, details)


def _p_scale(P: Polygon) -> float:
    return 1.0 + float(np.max(np.abs(P.p)))


def equiangular_spectrum(seed: int = 0, tol: float = 1e-9) -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(3, 13):
        ev = np.linalg.eigvals(p_matrix(np.full(n, 2 * math.pi / n)).entries)
        worst = max(worst, multiset_distance(ev, equiangular_eigenvalues(n)))
    res = _result(1, "equiangular-spectrum", worst, tol, t0)
    res.passed = res.passed and res.seconds < 1.0
    return res


def symmetric_spectrum(seed: int = 0, trials: int = 1000, tol: float = 1e-8) -> CheckResult:
    t0 = time.perf_counter()
    worst_sym = worst_tr = 0.0
    for n in range(4, 10):
        for g in gen.trial_rngs(seed + n, trials):
            theta = gen.random_turning(g, n)
            rep = spectral_report(theta)
            worst_sym = max(worst_sym, rep.symmetry_residual / rep.spectral_radius)
            worst_tr = max(worst_tr, max(odd_trace_residuals(theta).values()))
    res = _result(2, "symmetric-spectrum", max(worst_sym, worst_tr), tol, t0,
                  hausdorff=worst_sym, odd_traces=worst_tr)
    res.passed = res.passed and res.seconds < 30.0
    return res


def quadrilateral_homothety(seed: int = 0, trials: int = 100, tol: float = 1e-8) -> CheckResult:
    t0 = time.perf_counter()
    worst = worst_ratio = 0.0
    failures = 0
    for g in gen.trial_rngs(seed, trials):
        P = gen.random_ngon(g, 4)
        Q = P.with_p(g.uniform(-1.0, 1.0, 4))
        hp = homothety_check(P, p_evolute_power(P, 2))
        hq = homothety_check(Q, p_evolute_power(Q, 2))
        if hp is None or hq is None:
            failures += 1
            continue
        worst = max(worst, hp.residual / diameter(P), hq.residual / diameter(Q))
        worst_ratio = max(worst_ratio, abs(hp.ratio - hq.ratio) / max(1.0, abs(hp.ratio)))
    measured = math.inf if failures else max(worst, worst_ratio)
    return _result(3, "quadrilateral-homothety", measured, tol, t0,
                   residual=worst, ratio_spread=worst_ratio, failures=failures)


def grunbaum_pentagon(seed: int = 0, trials: int = 100, tol: float = 1e-8) -> CheckResult:
    t0 = time.perf_counter()
    worst, failures = 0.0, 0
    for g in gen.trial_rngs(seed, trials):
        P = gen.random_ngon(g, 5)
        P1 = p_evolute_transform(P)
        P3 = p_evolute_power(P1, 2)
        h = homothety_check(P1, P3, tol=1.0)
        if h is None:
            failures += 1
            continue
        worst = max(worst, h.residual / max(diameter(P1), diameter(P3)))
    return _result(4, "grunbaum-pentagon", math.inf if failures else worst, tol, t0, failures=failures)


def degenerate_pentagon(seed: int = 0, trials: int = 100, tol: float = 1e-7) -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    for g in gen.trial_rngs(seed, trials):
        P = gen.degenerate_pentagon(g)
        worst = max(worst, spread(p_evolute_power(P, 3)) / diameter(P))
    return _result(5, "degenerate-pentagon", worst, tol, t0)


def hexagon_duality(seed: int = 0, trials: int = 50, tol: float = 1e-8) -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    for g in gen.trial_rngs(seed, trials):
        P = gen.random_parallel_hexagon(g)
        P1 = p_evolute_transform(P)
        P3 = p_evolute_power(P1, 2)
        worst = max(worst, line_set_distance(P3, P1) / _p_scale(P1))
    return _result(6, "hexagon-duality", worst, tol, t0)


def hypocycloid_scaling(seed: int = 0, tol: float = 1e-10) -> CheckResult:
    t0 = time.perf_counter()
    g = gen.rng(seed)
    worst = 0.0
    for n in range(5, 13):
        for m in range(1, (n + 1) // 2):
            if 2 * m == n:
                continue
            a, b = g.uniform(-1.0, 1.0, 2)
            H = hypocycloid(n, m, a, b)
            lam = math.sin(2 * math.pi * m / n) / math.sin(2 * math.pi / n)
            C, S = harmonic_support(n, m, "cos"), harmonic_support(n, m, "sin")
            # the evolute of a C_m + b S_m is lam (b C_m - a S_m)
            E = p_evolute_transform(H)
            worst = max(worst, float(np.max(np.abs(E.p - lam * (b * C - a * S)))))
            mu = math.sin(math.pi * m / n) / math.sin(math.pi / n)
            A = a_o_evolute(H)
            _, resid = project_onto_orders(A, [m])
            ratio = float(np.linalg.norm(A.p) / np.linalg.norm(H.p))
            worst = max(worst, resid, abs(ratio - abs(mu)))
    lam52 = math.sin(4 * math.pi / 5) / math.sin(2 * math.pi / 5)
    golden = abs(lam52 - 2 * math.cos(2 * math.pi / 5))
    return _result(7, "hypocycloid-scaling", max(worst, golden), tol, t0, factor_n5_m2=lam52)


def antisymmetry(seed: int = 0, trials: int = 1000, tol: float = 1e-10) -> CheckResult:
    """``M P`` antisymmetric and ``M p`` equal to the side lengths.

    Residuals are relative to ``1 + |M| |P|`` (antisymmetry) and
    ``1 + |M| |p|`` (lengths): absolute rounding grows with the matrix
    entries, which reach ``1 / sin(theta)`` for small turning angles.
    """
    t0 = time.perf_counter()
    worst_a = worst_l = abs_a = abs_l = 0.0
    for i, g in enumerate(gen.trial_rngs(seed, trials)):
        P = gen.random_ngon(g, 3 + i % 8)
        theta = P.turning_angles()
        M, A = m_matrix(theta), p_matrix(theta).entries
        MA = M @ A
        nm = float(np.linalg.norm(M, 2))
        ra = float(np.max(np.abs(MA + MA.T)))
        rl = float(np.max(np.abs(M @ P.p - P.side_lengths())))
        abs_a, abs_l = max(abs_a, ra), max(abs_l, rl)
        worst_a = max(worst_a, ra / (1.0 + nm * float(np.linalg.norm(A, 2))))
        worst_l = max(worst_l, rl / (1.0 + nm * float(np.max(np.abs(P.p)))))
    return _result(8, "antisymmetry", max(worst_a, worst_l), tol, t0, antisymmetry=worst_a, lengths=worst_l,
                   absolute_antisymmetry=abs_a, absolute_lengths=abs_l)


def involute_round_trips(seed: int = 0, trials: int = 200, tol: float = 1e-8) -> CheckResult:
    t0 = time.perf_counter()
    worst_even = worst_odd = 0.0
    skipped = 0
    for i, g in enumerate(gen.trial_rngs(seed, trials)):
        Q = gen.random_ngon(g, 4 + 2 * (i % 4))
        if compose_reflections(Q.lines).kind != "rotation":
            skipped += 1
            continue
        R = p_evolute_transform(p_evolvent(Q))
        worst_even = max(worst_even, float(np.max(np.abs(R.p - Q.p))) / _p_scale(Q))
    for i, g in enumerate(gen.trial_rngs(seed + 1, trials)):
        Q = gen.random_zero_qp(g, 3 + 2 * (i % 4))
        fam = p_involute_family(Q)
        for t in (-2.0, 0.0, 0.5, 3.0):
            R = p_evolute_transform(fam.member(t))
            worst_odd = max(worst_odd, float(np.max(np.abs(R.p - Q.p))) / _p_scale(Q))
        if fam.evolvent is not None:
            R = p_evolute_transform(fam.evolvent)
            worst_odd = max(worst_odd, float(np.max(np.abs(R.p - Q.p))) / _p_scale(Q))
    mismatches = 0
    for i, g in enumerate(gen.trial_rngs(seed + 2, 1000)):
        n = 3 + 2 * (i % 4)
        Q = gen.random_zero_qp(g, n) if i % 2 else gen.random_ngon(g, n)
        zero = abs(quasiperimeter(Q)) <= eps_qp(Q.p)
        refl = compose_reflections(Q.lines).kind == REFLECTION
        mismatches += zero != refl
    measured = max(worst_even, worst_odd)
    return _result(9, "involute-round-trips", measured, tol, t0, passed=mismatches == 0,
                   even=worst_even, odd=worst_odd, classification_mismatches=mismatches, skipped=skipped)


def altitude_feet(V: np.ndarray) -> np.ndarray:
    """Feet of the altitudes; entry ``i`` lies on the side opposite vertex ``i``."""
    out = []
    for i in range(3):
        a, b, c = V[i], V[(i + 1) % 3], V[(i + 2) % 3]
        d = c - b
        out.append(b + d * ((a - b) @ d) / (d @ d))
    return np.array(out)


def orthic_triangle(seed: int = 0, trials: int = 100, tol: float = 1e-8) -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    for g in gen.trial_rngs(seed, trials):
        V = gen.random_acute_triangle(g)
        W = a_evolvent(Polygon.from_vertices(V, "ccw"), "odd").vertices()
        F = altitude_feet(V)
        d = np.linalg.norm(W[:, None, :] - F[None, :, :], axis=-1)
        worst = max(worst, float(d.min(axis=1).max()), float(d.min(axis=0).max()))
    return _result(10, "orthic-triangle", worst, tol, t0)


def ergodic_map(seed: int = 0, steps: int = 100_000, tol: float = 1e-10) -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    expanding = True
    for n in (3, 5, 7, 9):
        lam = ergodic_spectrum(n)
        ev = np.linalg.eigvals(pedal_matrix(n).astype(float))
        worst = max(worst, multiset_distance(ev, lam))
        expanding &= bool(np.all(np.abs(lam[1:]) > 1.0))
    g = gen.rng(seed)
    x0 = [int(v) for v in g.integers(0, MODULUS, 3)]
    hist = orbit_histogram(pedal_orbit(x0, steps), bins=10)
    empty = int(np.sum(hist == 0))
    return _result(11, "ergodic-map", worst, tol, t0, passed=expanding and empty == 0,
                   empty_bins=empty, min_bin=int(hist.min()))


def smooth_limits(seed: int = 0, trials: int = 20, tol: float = 0.5) -> CheckResult:
    """Dominant harmonics of iterated smooth evolvents and evolutes.

    ``measured`` counts the failing cases, so the tolerance is below one.
    """
    t0 = time.perf_counter()
    bad = 0
    for g in gen.trial_rngs(seed, trials):
        s = gen.random_support_poly(g, degree=6)
        if iterate_smooth(s, 30, "evolvent").dominant[-1] != 2:
            bad += 1
    for deg in range(2, 9):
        s = gen.random_support_poly(gen.rng(seed + deg), degree=deg)
        if iterate_smooth(s, 30, "evolute").dominant[-1] != deg:
            bad += 1
    steiner_bad = 0
    for g in gen.trial_rngs(seed + 100, trials):
        s = gen.random_support_poly(g, degree=6, zero_mean=False)
        if not np.array_equal(steiner_point_smooth(evolute_smooth(s)), steiner_point_smooth(s)):
            steiner_bad += 1
    return _result(12, "smooth-limits", bad + steiner_bad, tol, t0, dominant_failures=bad, steiner_failures=steiner_bad)


def equiangular_a_limit(seed: int = 0, trials: int = 5, steps: int = 100, tol: float = 1e-6) -> CheckResult:
    t0 = time.perf_counter()
    per_n = {}
    for n in (6, 8, 10):
        worst = 0.0
        for g in gen.trial_rngs(seed + n, trials):
            tr = iterate("a_o_evolute", gen.random_equiangular(g, n), steps)
            _, resid = project_onto_orders(tr.last, [n // 2])
            worst = max(worst, resid)
        per_n[n] = worst
    P = gen.random_equiangular(gen.rng(seed), 6)
    period_gap = 0.0
    cur = p_evolute_transform(P)
    for _ in range(10):
        nxt = p_evolute_power(cur, 2)
        # two steps reverse every coorientation, so the lines are compared unoriented
        period_gap = max(period_gap, line_set_distance(nxt, cur) / _p_scale(cur))
        cur = p_evolute_transform(cur)
    measured = max(max(per_n.values()), period_gap)
    return _result(13, "equiangular-a-limit", measured, tol, t0, residual_by_n=per_n, hexagon_period_gap=period_gap)


def evolvent_limits(seed: int = 0, trials: int = 5, steps: int = 100, tol: float = 1e-6) -> CheckResult:
    t0 = time.perf_counter()
    p_resid, a_dist = {}, {}
    for n in (5, 7, 9):
        wp = wa = 0.0
        for g in gen.trial_rngs(seed + n, trials):
            P = gen.random_equiangular(g, n, zero_mean=True)
            tr = iterate("p_evolvent", P, steps)
            if tr.event is not None:
                wp = math.inf
            else:
                wp = max(wp, project_onto_orders(tr.last, [(n - 1) // 2])[1])
            c = P.vertices().mean(axis=0)
            Q = P
            try:
                for _ in range(steps):
                    Q = a_evolvent(Q, "even")
                wa = max(wa, float(np.max(np.linalg.norm(Q.vertices() - c, axis=1))))
            except EvolabError:
                wa = math.inf
        p_resid[n], a_dist[n] = wp, wa
    measured = max(max(p_resid.values()), max(a_dist.values()))
    return _result(14, "evolvent-limits", measured, tol, t0, p_residual_by_n=p_resid, a_distance_by_n=a_dist)


CHECKS = {
    1: equiangular_spectrum,
    2: symmetric_spectrum,
    3: quadrilateral_homothety,
    4: grunbaum_pentagon,
    5: degenerate_pentagon,
    6: hexagon_duality,
    7: hypocycloid_scaling,
    8: antisymmetry,
    9: involute_round_trips,
    10: orthic_triangle,
    11: ergodic_map,
    12: smooth_limits,
    13: equiangular_a_limit,
    14: evolvent_limits,
}

NAMES = {
    "equiangular-spectrum": 1,
    "symmetric-spectrum": 2,
    "quadrilateral-homothety": 3,
    "grunbaum-pentagon": 4,
    "degenerate-pentagon": 5,
    "hexagon-duality": 6,
    "hypocycloid-scaling": 7,
    "antisymmetry": 8,
    "involute-round-trips": 9,
    "orthic-triangle": 10,
    "ergodic-map": 11,
    "smooth-limits": 12,
    "equiangular-a-limit": 13,
    "evolvent-limits": 14,
}


def run_check(key, seed: int = 0, **kwargs) -> CheckResult:
    if isinstance(key, str):
        if key not in NAMES:
            raise ValueError(f"unknown check {key!r}; expected one of {sorted(NAMES)}")
        key = NAMES[key]
    return CHECKS[key](seed=seed, **kwargs)
