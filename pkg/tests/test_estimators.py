import math

import numpy as np
import pytest
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from conftest import random_polygon
from evolab._validation import check_angles, check_positive_int, check_supports
from evolab.dynamics import normalize
from evolab.errors import EmptyInput
from evolab.estimators import HarmonicDecomposer, PEvoluteTransformer, PolygonNormalizer
from evolab.geometry import Polygon
from evolab.harmonics import decompose_support, standard_angles
from evolab.p_evolute import p_evolute_power


def test_p_evolute_transformer_matches_transform(rng):
    X = rng.uniform(-1, 1, (4, 7))
    out = PEvoluteTransformer(steps=2).fit_transform(X)
    for row, p in zip(out, X):
        assert np.allclose(row, p_evolute_power(Polygon(standard_angles(7), p), 2).p)


def test_custom_directions(rng):
    P = random_polygon(rng, 5, min_sin=0.05)
    out = PEvoluteTransformer(alpha=P.alpha).fit_transform(P.p)
    assert np.allclose(out[0], p_evolute_power(P, 1).p)


def test_harmonic_round_trip(rng):
    for n in (5, 6):
        X = rng.uniform(-1, 1, (3, n))
        dec = HarmonicDecomposer().fit(X)
        C = dec.transform(X)
        assert C.shape == (3, n)
        assert np.allclose(dec.inverse_transform(C), X, atol=1e-12)
        assert math.isclose(C[0, 0], decompose_support(X[0]).a0)


def test_normalizer(rng):
    X = rng.uniform(-1, 1, (3, 6))
    out = PolygonNormalizer().fit_transform(X)
    for row, p in zip(out, X):
        assert np.allclose(row, normalize(Polygon(standard_angles(6), p)).p)


def test_pipeline(rng):
    X = rng.uniform(-1, 1, (5, 9))
    pipe = make_pipeline(PEvoluteTransformer(steps=3), HarmonicDecomposer())
    assert pipe.fit_transform(X).shape == (5, 9)


def test_not_fitted_and_shape_errors(rng):
    with pytest.raises(NotFittedError):
        PEvoluteTransformer().transform(np.zeros((1, 5)))
    est = PEvoluteTransformer().fit(rng.uniform(-1, 1, (2, 5)))
    with pytest.raises(ValueError):
        est.transform(np.zeros((1, 6)))
    with pytest.raises(ValueError):
        PEvoluteTransformer(steps=-1).fit(np.zeros((1, 5)))


def test_get_params_round_trip():
    est = PEvoluteTransformer(steps=4)
    assert est.get_params() == {"alpha": None, "steps": 4}
    assert est.set_params(steps=2).steps == 2


def test_validation_helpers():
    assert check_supports([1.0, 2.0, 3.0]).shape == (1, 3)
    with pytest.raises(EmptyInput):
        check_supports(np.zeros((0, 4)))
    with pytest.raises(ValueError):
        check_supports([[1.0, 2.0]])
    with pytest.raises(ValueError):
        check_supports([[1.0, np.nan, 2.0]])
    with pytest.raises(ValueError):
        check_angles([0.0, 1.0], 3)
    with pytest.raises(ValueError):
        check_positive_int(True, "steps")
    assert check_positive_int(np.int64(3), "steps") == 3
