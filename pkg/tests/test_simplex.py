import numpy as np
import pytest

from maxkcut import build_simplex, nearest_vertex


def test_k2_is_plus_minus_one():
    s = build_simplex(2)
    assert np.allclose(s.vertices, [[1.0], [-1.0]], atol=1e-15)


def test_k3_is_equilateral_triangle():
    V = build_simplex(3).vertices
    assert np.allclose(np.linalg.norm(V, axis=1), 1.0, atol=1e-12)
    for i in range(3):
        for j in range(i + 1, 3):
            assert abs(V[i] @ V[j] + 0.5) < 1e-12
            # 120 degrees apart
            assert abs(np.arccos(np.clip(V[i] @ V[j], -1, 1)) - 2 * np.pi / 3) < 1e-12


@pytest.mark.parametrize("k", range(2, 13))
def test_invariants(k):
    V = build_simplex(k).vertices
    assert V.shape == (k, k - 1)
    assert np.max(np.abs(np.linalg.norm(V, axis=1) - 1.0)) < 1e-12
    G = V @ V.T
    off = G[~np.eye(k, dtype=bool)]
    assert np.max(np.abs(off + 1.0 / (k - 1))) < 1e-12
    assert np.max(np.abs(V.sum(axis=0))) < 1e-10


def test_rejects_k1():
    with pytest.raises(ValueError):
        build_simplex(1)


@pytest.mark.parametrize("k", [2, 3, 4, 5, 8])
def test_each_vertex_is_its_own_nearest(k):
    s = build_simplex(k)
    for j in range(k):
        assert nearest_vertex(s, s.vertices[j]) == j


def test_total_tie_goes_to_lowest_index():
    s = build_simplex(4)
    assert nearest_vertex(s, np.zeros(3)) == 0


def test_midpoint_perturbation():
    s = build_simplex(3)
    w0, w1 = s.vertices[0], s.vertices[1]
    z = 0.5 * (w0 + w1) + 1e-9 * w0
    # direct dot comparison: the perturbation breaks the 0/1 tie toward 0
    scores = s.vertices @ z
    assert scores[0] > scores[1] > scores[2]
    assert nearest_vertex(s, z) == 0


def test_dimension_mismatch():
    s = build_simplex(3)
    with pytest.raises(ValueError):
        nearest_vertex(s, np.zeros(3))


def test_positive_scaling_invariance():
    rng = np.random.default_rng(11)
    s = build_simplex(5)
    for _ in range(50):
        z = rng.standard_normal(4)
        c = float(rng.uniform(0.01, 100.0))
        assert nearest_vertex(s, z) == nearest_vertex(s, c * z)


@pytest.mark.parametrize("k", [3, 5])
def test_gaussian_labels_are_uniform(k):
    # symmetry of the simplex: standard normal z lands in each cell w.p. 1/k
    rng = np.random.default_rng(23)
    n_samples = 200_000
    Z = rng.standard_normal((n_samples, k - 1))
    s = build_simplex(k)
    labels = np.argmax(Z @ s.vertices.T, axis=1)
    freqs = np.bincount(labels, minlength=k) / n_samples
    sigma = np.sqrt((1 / k) * (1 - 1 / k) / n_samples)
    assert np.max(np.abs(freqs - 1 / k)) < 3 * sigma
