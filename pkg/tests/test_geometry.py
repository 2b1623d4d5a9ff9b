import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplicial_qcqp import (
    Simplex,
    barycentric_to_point,
    bisect,
    cm_volume,
    diameter,
    initial_simplex,
    is_degenerate,
    longest_edge,
)
from simplicial_qcqp.errors import DegenerateCoverError, WeightsInvalidError
from simplicial_qcqp.geometry import barycentric_coordinates, contains, edge_volume

TRI = Simplex([[0, 0], [2, 0], [0, 2]])
SEG = Simplex([[0], [1]])


def test_initial_simplex_examples():
    assert initial_simplex([0], [1]).vertices.tolist() == [[0], [1]]
    S = initial_simplex([0, 0], [1, 1])
    assert S.vertices.tolist() == [[0, 0], [2, 0], [0, 2]]
    assert S.generation == 0
    np.testing.assert_allclose(barycentric_coordinates(S, [1, 1]), [0, 0.5, 0.5])


def test_initial_simplex_errors():
    with pytest.raises(DegenerateCoverError):
        initial_simplex([0.5, 1.0], [0.5, 1.0])
    with pytest.raises(ValueError):
        initial_simplex([1.0], [0.0])


def test_longest_edge_examples():
    # indices are 0-based
    i, j, d = longest_edge(TRI)
    assert (i, j) == (1, 2) and d == pytest.approx(2 * math.sqrt(2))
    i, j, d = longest_edge(Simplex([[0, 0], [2, 0], [1, math.sqrt(3)]]))
    assert (i, j) == (0, 1) and d == pytest.approx(2.0)
    assert longest_edge(SEG) == (0, 1, 1.0)


def test_bisect_examples():
    S1, S2, eta, ij = bisect(SEG)
    assert eta.tolist() == [0.5] and ij == (0, 1)
    assert S1.vertices.tolist() == [[0], [0.5]] and S2.vertices.tolist() == [[0.5], [1]]
    S1, S2, eta, ij = bisect(TRI)
    assert eta.tolist() == [1, 1]
    assert S1.vertices.tolist() == [[0, 0], [2, 0], [1, 1]]
    assert S2.vertices.tolist() == [[0, 0], [1, 1], [0, 2]]
    assert S1.generation == S2.generation == 1


def test_bisect_membership():
    rng = np.random.default_rng(0)
    S1, S2, _, _ = bisect(TRI)
    for w in rng.dirichlet(np.ones(3), 200):
        y = barycentric_to_point(TRI, w)
        assert contains(S1, y) or contains(S2, y)


def test_degeneracy_examples():
    assert is_degenerate(Simplex([[0, 0], [1, 0], [2, 0]]))
    assert not is_degenerate(TRI)
    assert is_degenerate(Simplex([[0], [0]]))


def test_degeneracy_is_scale_free():
    thin = np.array([[0, 0], [1, 0], [0.5, 1e-14]])
    for s in (1e-6, 1.0, 1e6):
        assert is_degenerate(Simplex(s * thin))
        assert not is_degenerate(Simplex(s * TRI.vertices))


def test_barycentric_examples():
    assert barycentric_to_point(SEG, [0.5, 0.5]).tolist() == [0.5]
    assert barycentric_to_point(TRI, [1, 0, 0]).tolist() == [0, 0]
    assert barycentric_to_point(TRI, [0, 0.5, 0.5]).tolist() == [1, 1]
    with pytest.raises(WeightsInvalidError):
        barycentric_to_point(TRI, [0.5, 0.6, 0])
    with pytest.raises(WeightsInvalidError):
        barycentric_to_point(TRI, [-0.1, 0.6, 0.5])
    with pytest.raises(WeightsInvalidError):
        barycentric_to_point(TRI, [1, 0])


def test_cm_volume_examples():
    assert cm_volume(Simplex([[0, 0], [1, 0], [0, 1]])) == pytest.approx(0.5, rel=1e-12)
    assert cm_volume(TRI) == pytest.approx(2.0, rel=1e-12)
    assert cm_volume(SEG) == pytest.approx(1.0, rel=1e-12)


def test_cm_volume_exact_on_slivers():
    # height 1e-6 over a unit base: float elimination would lose ~1e-4 relative here
    S = Simplex([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.25, 0.25, 1e-6]])
    assert cm_volume(S) == pytest.approx(1e-6 / 6, rel=1e-14)
    S1, S2, _, _ = bisect(S)
    assert cm_volume(S1) + cm_volume(S2) == pytest.approx(cm_volume(S), rel=1e-14)
    assert cm_volume(Simplex([[0.0, 0.0], [1e150, 0.0], [0.0, 1e150]])) == pytest.approx(5e299)


def test_simplex_shape_check():
    with pytest.raises(ValueError):
        Simplex([[0, 0], [1, 1]])


def random_simplex(rng, r):
    while True:
        S = Simplex(rng.uniform(-3, 3, (r + 1, r)))
        if not is_degenerate(S):
            return S


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), r=st.integers(1, 5))
def test_cm_volume_matches_determinant(seed, r):
    S = random_simplex(np.random.default_rng(seed), r)
    assert cm_volume(S) == pytest.approx(edge_volume(S), rel=1e-6)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), r=st.integers(1, 5))
def test_bisection_additivity_and_monotone_diameter(seed, r):
    S = random_simplex(np.random.default_rng(seed), r)
    S1, S2, _, _ = bisect(S)
    assert cm_volume(S1) + cm_volume(S2) == pytest.approx(cm_volume(S), rel=1e-9)
    assert diameter(S1) <= diameter(S) and diameter(S2) <= diameter(S)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_exhaustive_chain(r):
    S = initial_simplex(np.zeros(r), np.ones(r))
    d0 = diameter(S)
    prev = d0
    for _ in range(40):
        S, _, _, _ = bisect(S)
        assert diameter(S) <= prev
        prev = diameter(S)
    assert prev < d0 * 0.95 ** (40 / (r * (r + 1) / 2))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), r=st.integers(1, 4))
def test_initial_simplex_covers_box(seed, r):
    rng = np.random.default_rng(seed)
    ylo = rng.uniform(-2, 2, r)
    yhi = ylo + rng.uniform(0.01, 3, r)
    S = initial_simplex(ylo, yhi)
    for y in rng.uniform(ylo, yhi, (1000, r)):
        assert contains(S, y, tol=1e-9)
