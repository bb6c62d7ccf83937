import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from beamspace.grid import (
    SensorSet, make_grid, min_subspace_distance, steering_matrix, steering_vector,
    subspace_distance,
)


def test_grid_two_points():
    np.testing.assert_array_equal(make_grid(2).points, [-1.0, 0.0])


def test_grid_four_points():
    np.testing.assert_array_equal(make_grid(4).points, [-1.0, -0.5, 0.0, 0.5])


def test_grid_1024_landmarks():
    f = make_grid(1024).points
    assert f[0] == -1.0
    assert f[512] == 0.0
    assert f[1023] == 1 - 2 / 1024
    assert np.all(np.diff(f) > 0)


@pytest.mark.parametrize("n", [0, 1, -3])
def test_grid_rejects_small(n):
    with pytest.raises(ValueError):
        make_grid(n)


@pytest.mark.parametrize("n", [2, 3, 8, 17, 1024])
def test_grid_symmetry(n):
    f = make_grid(n).points
    # f_k + f_{n-k} = 0 for k = 1..n-1 (zero-based), endpoint -1 unpaired
    k = np.arange(1, n)
    np.testing.assert_allclose(f[k] + f[n - k], 0.0, atol=1e-15)


def test_steering_examples():
    np.testing.assert_allclose(steering_vector([0, 1, 2], 0.0), [1, 1, 1])
    np.testing.assert_allclose(steering_vector(SensorSet((0, 1)), 0.0), [1, 1])
    np.testing.assert_allclose(steering_vector([0, 2], 0.5), [1, -1], atol=1e-15)


def test_steering_rejects_out_of_range():
    with pytest.raises(ValueError):
        steering_vector([0, 1], 1.0)


def test_steering_unit_modulus(rng):
    pos = np.sort(rng.choice(500, size=20, replace=False))
    A = steering_matrix(pos, make_grid(64).points)
    np.testing.assert_allclose(np.abs(A), 1.0, atol=1e-12)


def test_sensor_set_validation():
    with pytest.raises(ValueError):
        SensorSet((0, 0, 1))
    with pytest.raises(ValueError):
        SensorSet((3, 1))
    with pytest.raises(ValueError):
        SensorSet((-1, 2))
    assert SensorSet.ula(4).positions == (0, 1, 2, 3)


def test_subspace_distance_examples():
    assert subspace_distance([1, 1j], [1, 1j]) == pytest.approx(0, abs=1e-15)
    assert subspace_distance([1, 0], [0, 1]) == 1.0
    assert subspace_distance([1, 1], [1, 0]) == pytest.approx(0.5, abs=1e-15)


def test_subspace_distance_errors():
    with pytest.raises(ValueError):
        subspace_distance([0, 0], [1, 0])
    with pytest.raises(ValueError):
        subspace_distance([1, 0], [1, 0, 0])


complex_vecs = arrays(np.complex128, 6, elements=st.complex_numbers(
    max_magnitude=10, allow_nan=False, allow_infinity=False, allow_subnormal=False))


@settings(max_examples=200, deadline=None)
@given(complex_vecs, complex_vecs,
       st.complex_numbers(min_magnitude=0.1, max_magnitude=10),
       st.complex_numbers(min_magnitude=0.1, max_magnitude=10))
def test_distance_properties(u, v, c1, c2):
    if np.linalg.norm(u) < 1e-3 or np.linalg.norm(v) < 1e-3:
        return
    d = subspace_distance(u, v)
    assert 0.0 <= d <= 1.0
    assert d == pytest.approx(subspace_distance(v, u), abs=1e-12)
    assert subspace_distance(c1 * u, c2 * v) == pytest.approx(d, abs=1e-12)
    assert subspace_distance(u, u) == pytest.approx(0.0, abs=1e-12)


def test_min_distance_example():
    d, pair = min_subspace_distance([[1, 0], [0, 1], [1, 1]])
    assert d == pytest.approx(0.5, abs=1e-12)
    assert pair == (0, 2)


def test_min_distance_same_span():
    u = np.array([1 + 2j, -0.5j, 3.0])
    d, pair = min_subspace_distance([u, (0.3 - 2j) * u])
    assert d == pytest.approx(0.0, abs=1e-12)
    assert pair == (0, 1)


def test_min_distance_identity():
    assert min_subspace_distance(np.eye(2))[0] == 1.0


def test_min_distance_needs_two():
    with pytest.raises(ValueError):
        min_subspace_distance([[1, 2]])
    with pytest.raises(ValueError):
        min_subspace_distance([[1, 0], [0, 0]])


def test_min_distance_matches_pairwise_loop(rng):
    X = rng.standard_normal((5, 12)) + 1j * rng.standard_normal((5, 12))
    best, best_pair = 2.0, None
    for i in range(12):
        for j in range(i + 1, 12):
            d = subspace_distance(X[:, i], X[:, j])
            if d < best - 1e-12:
                best, best_pair = d, (i, j)
    d, pair = min_subspace_distance(X)
    assert d == pytest.approx(best, abs=1e-12)
    assert pair == best_pair


def test_min_distance_ula_columns_tie_break():
    # neighbouring ULA steering vectors on a uniform grid all share one distance
    A = steering_matrix(np.arange(4), make_grid(16).points)
    assert min_subspace_distance(A)[1] == (0, 1)
