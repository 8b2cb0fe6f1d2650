import math

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import seeds
from evolab.errors import IndexOutOfRange, NotConvex, NotEquiangular
from evolab.geometry import Polygon
from evolab.harmonics import (
    classical_steiner,
    decompose_equiangular,
    decompose_support,
    harmonic_polygon,
    harmonic_support,
    hypocycloid,
    is_equiangular,
    standard_angles,
    vertex_centroid,
    vertex_centroid_equiangular,
)


def test_c0_is_regular_circumscribed():
    P = harmonic_polygon(7, 0)
    assert np.allclose(P.p, 1.0)
    assert np.allclose(np.linalg.norm(P.vertices(), axis=1), 1 / math.cos(math.pi / 7))


def test_c1_lines_pass_through_one_point():
    V = harmonic_polygon(8, 1).vertices()
    assert np.allclose(V, [[1.0, 0.0]] * 8, atol=1e-12)


@pytest.mark.parametrize("n", [6, 10])
def test_half_order_is_doubled_polygon(n):
    # lines j and j + n/2 coincide with opposite coorientations
    P, h = harmonic_polygon(n, n // 2), n // 2
    assert np.allclose(np.exp(1j * P.alpha[h:]), -np.exp(1j * P.alpha[:h]), atol=1e-12)
    assert np.allclose(P.p[h:], -P.p[:h])


def test_half_order_when_four_divides_n():
    # opposite lines are parallel but distinct; all stay tangent to the unit circle
    P = harmonic_polygon(8, 4)
    assert np.allclose(P.p[4:], P.p[:4])
    assert np.allclose(np.abs(P.p), 1.0)


def test_index_errors():
    with pytest.raises(IndexOutOfRange):
        harmonic_polygon(6, 4)
    with pytest.raises(IndexOutOfRange):
        harmonic_polygon(6, 3, "sin")
    with pytest.raises(IndexOutOfRange):
        harmonic_polygon(6, 0, "sin")


@pytest.mark.parametrize("n", range(3, 13))
def test_reduction_formulas(n):
    for m in range(0, n + 1):
        c, s = harmonic_support(n, m, "cos"), harmonic_support(n, m, "sin")
        assert np.allclose(harmonic_support(n, n - m, "cos"), c, atol=1e-12)
        assert np.allclose(harmonic_support(n, n - m, "sin"), -s, atol=1e-12)
        assert np.allclose(harmonic_support(n, n + m, "cos"), c, atol=1e-12)
        assert np.allclose(harmonic_support(n, n + m, "sin"), s, atol=1e-12)


def test_basis_decomposes_to_itself():
    for n in (5, 6, 9):
        for m in range(1, (n + 1) // 2):
            dec = decompose_equiangular(harmonic_polygon(n, m))
            assert np.allclose(dec.coefficient(m), (1.0, 0.0), atol=1e-12)
            others = [dec.magnitude(k) for k in range(1, (n + 1) // 2) if k != m]
            assert max(others, default=0.0) < 1e-12


def test_constant_term_convention():
    dec = decompose_support(2 * harmonic_support(6, 0))
    assert math.isclose(dec.a0, 4.0)


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_decomposition_round_trip(seed):
    g = np.random.default_rng(seed)
    n = int(g.integers(3, 14))
    P = Polygon(standard_angles(n, g.uniform(0, 2 * math.pi)), g.uniform(-1, 1, n))
    dec = decompose_equiangular(P)
    assert np.allclose(dec.support(), P.p, atol=1e-10)
    # direct-summation oracle of the components
    assert np.allclose(sum(dec.component(m) for m in range(n // 2 + 1)), P.p, atol=1e-10)


def test_not_equiangular(rng):
    P = Polygon([0.0, 1.0, 3.0, 4.5], [1, 1, 1, 1])
    assert not is_equiangular(P)
    with pytest.raises(NotEquiangular):
        decompose_equiangular(P)


def test_vertex_centroid_examples(rng):
    for n in (5, 8):
        P = hypocycloid(n, 1, 0.3, -0.8)
        assert np.allclose(vertex_centroid(P), [0.3, -0.8])
        assert np.allclose(vertex_centroid(harmonic_polygon(n, 2)), [0, 0], atol=1e-12)
    P = Polygon(standard_angles(7), rng.uniform(-1, 1, 7))
    shift = np.array([5.0, 7.0])
    assert np.allclose(vertex_centroid(P.translated(shift)), vertex_centroid(P) + shift)
    assert np.allclose(vertex_centroid_equiangular(P), vertex_centroid(P))


def test_classical_steiner():
    c = np.array([0.4, -1.1])
    P = harmonic_polygon(6, 0).translated(c)
    assert np.allclose(classical_steiner(P), c)
    Q = Polygon(standard_angles(6), [1.0, 1.2, 0.9, 1.1, 1.0, 0.95])
    assert np.allclose(classical_steiner(Q), vertex_centroid(Q))


def test_classical_steiner_oracle():
    V = np.array([[0.0, 0.0], [2.0, 0.0], [2.5, 1.5], [0.5, 2.0]])
    P = Polygon.from_vertices(V, "ccw")
    ext = []
    for i in range(4):
        a, b = V[i] - V[i - 1], V[(i + 1) % 4] - V[i]
        ext.append(math.atan2(a[0] * b[1] - a[1] * b[0], a @ b))
    assert math.isclose(sum(ext), 2 * math.pi)
    expected = np.array(ext) @ V / (2 * math.pi)
    assert np.allclose(classical_steiner(P), expected)


def test_classical_steiner_rejects_hedgehog():
    with pytest.raises(NotConvex):
        classical_steiner(harmonic_polygon(5, 2))


@pytest.mark.parametrize("n", [6, 7, 9])
def test_hypocycloid_lines_meet_on_circle(n):
    a, b = 0.6, -0.3
    for m, sign in ((n - 1, -1), (n + 1, 1)):
        p = a * harmonic_support(n, m, "cos") + b * harmonic_support(n, m, "sin")
        V = Polygon(standard_angles(n), p).vertices()
        assert np.allclose(V, [[a, sign * b]] * n, atol=1e-12)
