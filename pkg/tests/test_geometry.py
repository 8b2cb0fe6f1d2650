import math

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import random_polygon, seeds
from evolab.errors import DegenerateTurning, EmptyInput, EvenGon, ParallelLines
from evolab.geometry import (
    GLIDE,
    IDENTITY,
    REFLECTION,
    ROTATION,
    CoorientedLine,
    Polygon,
    alternating_sums,
    compose_reflections,
    even_rotation_closed_form,
    quasiperimeter,
    reflect_line,
    reflect_point,
    side_lengths,
    turning_angles,
    unit,
    vertex,
)


def test_line_canonical_and_reversal():
    l = CoorientedLine(-math.pi / 2, 2.0)
    assert 0 <= l.alpha < 2 * math.pi
    r = l.reversed()
    assert math.isclose(r.alpha, math.pi / 2) and r.p == -2.0
    back = r.reversed()
    assert math.isclose(back.alpha, l.alpha) and back.p == l.p


def test_vertex_examples():
    assert np.allclose(vertex(CoorientedLine(0, 1), CoorientedLine(math.pi / 2, 1)), [1, 1])
    assert np.allclose(vertex(CoorientedLine(0, 0), CoorientedLine(math.pi / 2, 0)), [0, 0])
    # direct 2x2 solve
    a1, p1, a2, p2 = 0.0, 2.0, math.pi / 3, 1.0
    A = np.array([[math.cos(a1), math.sin(a1)], [math.cos(a2), math.sin(a2)]])
    assert np.allclose(vertex(CoorientedLine(a1, p1), CoorientedLine(a2, p2)), np.linalg.solve(A, [p1, p2]))


def test_vertex_parallel_raises():
    with pytest.raises(ParallelLines):
        vertex(CoorientedLine(0, 1), CoorientedLine(math.pi, 1))


def test_equilateral_side_lengths():
    P = Polygon(2 * math.pi * np.arange(3) / 3, np.ones(3))
    assert np.allclose(side_lengths(P), 2 * math.sqrt(3))


def test_side_lengths_match_vertex_differences(rng):
    for n in range(3, 9):
        P = random_polygon(rng, n)
        V = P.vertices()
        for j, l in enumerate(P.lines):
            d = V[j] - V[j - 1]
            assert math.isclose(side_lengths(P)[j], d @ l.direction, abs_tol=1e-9 * (1 + np.abs(V).max()))
            assert abs(l.signed_distance(V[j])) < 1e-9 * (1 + np.abs(V).max())


def test_turning_angles_equiangular_and_reversal():
    n = 7
    P = Polygon(2 * math.pi * np.arange(1, n + 1) / n, np.ones(n))
    theta, k = turning_angles(P)
    assert np.allclose(theta, 2 * math.pi / n) and k == 1
    R = Polygon(P.alpha[::-1], P.p[::-1])
    theta_r, k_r = turning_angles(R)
    assert np.allclose(theta_r, -2 * math.pi / n) and k_r == -1


def test_half_harmonic_polygon_turns_once():
    n = 8
    alpha = 2 * math.pi * np.arange(1, n + 1) / n
    _, k = turning_angles(Polygon(alpha, (-1.0) ** np.arange(1, n + 1)))
    assert k == 1


def test_degenerate_turning_rejected():
    with pytest.raises(DegenerateTurning):
        Polygon([0.0, 0.0, 1.0], [1, 2, 3])


def test_alternating_sums_examples():
    B, _ = alternating_sums([0.0, math.pi / 2])
    assert math.isclose(B, 3 * math.pi / 2)
    _, Bj = alternating_sums([0.0, 2 * math.pi / 3, 4 * math.pi / 3])
    assert np.allclose(Bj, 2 * math.pi / 3)


def test_alternating_sums_identity(rng):
    for _ in range(20):
        n = int(rng.choice([3, 5, 7, 9]))
        a = rng.uniform(0, 2 * math.pi, n)
        B, Bj = alternating_sums(a)
        assert abs(np.exp(1j * B) - np.exp(1j * (a[0] + Bj[0]))) < 1e-12


def test_alternating_sums_turning_identity(rng):
    # -2 B_j is the alternating sum of turning angles starting at line j
    P = random_polygon(rng, 7)
    theta = P.turning_angles()
    _, Bj = alternating_sums(P.alpha)
    n = P.n
    for j in range(n):
        s = sum((-1) ** k * theta[(j + k) % n] for k in range(n))
        assert abs(np.exp(-2j * Bj[j]) - np.exp(1j * s)) < 1e-12


def test_alternating_turning_sign_by_hand():
    # equilateral triangle: B_j = 2pi/3 while the alternating turning sum is 2pi/3
    _, Bj = alternating_sums(2 * math.pi * np.arange(3) / 3)
    assert abs(np.exp(-2j * Bj[0]) - np.exp(2j * math.pi / 3)) < 1e-12
    assert abs(np.exp(2j * Bj[0]) - np.exp(2j * math.pi / 3)) > 1


def test_alternating_sums_empty():
    with pytest.raises(EmptyInput):
        alternating_sums([])


def test_quasiperimeter_examples():
    alpha = math.pi / 2 + 2 * math.pi * np.arange(3) / 3
    assert quasiperimeter(Polygon(alpha, np.zeros(3))) == 0.0
    P = Polygon(alpha, np.ones(3))
    assert math.isclose(quasiperimeter(P), 3 * math.sqrt(3) / 2)
    assert compose_reflections(P.lines).kind == GLIDE
    with pytest.raises(EvenGon):
        quasiperimeter(Polygon(2 * math.pi * np.arange(4) / 4, np.ones(4)))


def test_quasiperimeter_equiangular_proportional_to_perimeter(rng):
    n = 5
    alpha = 2 * math.pi * np.arange(1, n + 1) / n
    ratios = []
    for _ in range(5):
        P = Polygon(alpha, rng.uniform(-1, 1, n))
        ratios.append(quasiperimeter(P) / P.side_lengths().sum())
    assert np.ptp(ratios) < 1e-12


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_quasiperimeter_reversal_flips_sign(seed):
    g = np.random.default_rng(seed)
    P = random_polygon(g, 5)
    flags = g.choice([-1, 1], 5)
    Q = P.reoriented(flags)
    expected = quasiperimeter(P) * np.prod(flags)
    assert math.isclose(quasiperimeter(Q), expected, abs_tol=1e-12)


def test_reflect_point_examples():
    m = CoorientedLine(0.0, 1.0)
    assert np.allclose(reflect_point(m, [0, 0]), [2, 0])
    assert np.allclose(reflect_point(m, [1, 5]), [1, 5])


@given(seeds)
@settings(max_examples=50, deadline=None)
def test_reflect_point_involution(seed):
    g = np.random.default_rng(seed)
    m = CoorientedLine(g.uniform(0, 7), g.uniform(-3, 3))
    u = g.uniform(-5, 5, 2)
    assert np.allclose(reflect_point(m, reflect_point(m, u)), u, atol=1e-9)


def test_reflect_line_examples():
    img = reflect_line(CoorientedLine(0.0, 0.0), CoorientedLine(math.pi / 2, 0.0))
    assert math.isclose(img.alpha, 3 * math.pi / 2) and abs(img.p) < 1e-15
    l = CoorientedLine(1.0, 0.5)
    same = reflect_line(l, l)
    assert abs(math.sin(same.alpha - l.alpha)) < 1e-12


@given(seeds)
@settings(max_examples=50, deadline=None)
def test_reflect_line_pointwise(seed):
    g = np.random.default_rng(seed)
    m = CoorientedLine(g.uniform(0, 7), g.uniform(-3, 3))
    l = CoorientedLine(g.uniform(0, 7), g.uniform(-3, 3))
    img = reflect_line(m, l)
    a, b = l.point_at(-1.3), l.point_at(2.1)
    ra, rb = reflect_point(m, a), reflect_point(m, b)
    assert abs(img.signed_distance(ra)) < 1e-9 and abs(img.signed_distance(rb)) < 1e-9
    # orientation transported: the image of a -> b runs along the image direction
    assert (rb - ra) @ img.direction > 0


def test_compose_examples():
    S = compose_reflections([CoorientedLine(math.pi / 2, 0), CoorientedLine(0, 0)])
    assert S.kind == ROTATION and np.allclose(S.center, 0) and math.isclose(abs(S.angle - math.pi), 0, abs_tol=1e-12)
    l = CoorientedLine(0.7, 1.3)
    assert compose_reflections([l, l]).kind == IDENTITY
    with pytest.raises(EmptyInput):
        compose_reflections([])


def _probe_compose(lines, u):
    for l in lines:
        u = reflect_point(l, u)
    return u


@given(seeds)
@settings(max_examples=200, deadline=None)
def test_compose_matches_probe_points(seed):
    g = np.random.default_rng(seed)
    n = int(g.integers(1, 10))
    lines = [CoorientedLine(g.uniform(0, 7), g.uniform(-2, 2)) for _ in range(n)]
    S = compose_reflections(lines)
    for u in ([0.0, 0.0], [1.0, 0.0], [0.0, 1.0]):
        assert np.allclose(S(u), _probe_compose(lines, np.array(u)), atol=1e-9)
    if n % 2:
        assert S.kind in (REFLECTION, GLIDE)
    else:
        assert S.kind in (ROTATION, "translation", IDENTITY)


def test_odd_axis_and_s_squared(rng):
    for n in (3, 5, 7, 9):
        P = random_polygon(rng, n)
        S = compose_reflections(P.lines)
        B, _ = alternating_sums(P.alpha)
        assert abs(math.sin(S.axis.alpha - B)) < 1e-12
        S2 = S(S(np.zeros(2)))
        expected = 4 * quasiperimeter(P) * unit(math.pi / 2 + B)
        assert np.allclose(S2, expected, atol=1e-9)
        # the glide shift is twice the quasiperimeter
        assert S.kind == GLIDE and math.isclose(abs(S.shift), 2 * abs(quasiperimeter(P)), rel_tol=1e-9)


def test_even_rotation_closed_form(rng):
    for n in (2, 4, 6, 8):
        lines = [CoorientedLine(a, p) for a, p in zip(rng.uniform(0, 7, n), rng.uniform(-1, 1, n))]
        S = compose_reflections(lines)
        angle, w, center = even_rotation_closed_form(lines)
        assert np.allclose(S(np.zeros(2)), w, atol=1e-12)
        assert abs(np.exp(1j * angle) - np.exp(1j * S.angle)) < 1e-12
        assert np.allclose(center, S.center, atol=1e-9)


def test_from_vertices_convention():
    V = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
    P = Polygon.from_vertices(V, "ccw")
    assert np.allclose(P.vertices(), V)
    # counterclockwise order gets outward normals: the first side (from (0,1) to (0,0)) faces -x
    assert np.allclose(P.normals()[0], [-1, 0])
    Q = Polygon.from_vertices(V, "cw")
    assert np.allclose(Q.vertices(), V) and np.allclose(Q.normals()[0], [1, 0])
