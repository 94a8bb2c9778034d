import itertools

import numpy as np
import pytest

from truncnet.cones import (
    PolyhedralCone,
    Region,
    Simplex,
    coefficients,
    cone_from_params,
    face_hyperplane,
    membership,
    params_from_cone,
    regular_simplex_with_inball,
    simplex_contains,
    truncate_via_cone,
)
from truncnet.exceptions import DegenerateEdges, DegenerateSimplex, DimensionMismatch, NotFullCone
from truncnet.truncation import TruncationParams, truncate

from conftest import random_full_rank

UNIT = PolyhedralCone([0.0, 0.0], np.eye(2))
GOLDEN = PolyhedralCone([0.0, 1.0], [[1.0, 1.0], [-1.0, 1.0]])
GOLDEN_W = 0.5 * np.array([[1.0, 1.0], [-1.0, 1.0]])


def test_cone_from_params_examples():
    c = cone_from_params(np.eye(2), np.zeros(2))
    np.testing.assert_array_equal(c.p, [0.0, 0.0])
    np.testing.assert_array_equal(c.edges, np.eye(2))
    c = cone_from_params([[1.0]], [-1.0])
    np.testing.assert_allclose(c.p, [1.0])
    np.testing.assert_allclose(c.edges, [[1.0]])
    c = cone_from_params(GOLDEN_W, [-0.5, -0.5])
    np.testing.assert_allclose(c.p, [0.0, 1.0], atol=1e-15)
    np.testing.assert_allclose(c.edges, [[1.0, 1.0], [-1.0, 1.0]], atol=1e-15)


def test_params_from_cone_examples():
    W, b = params_from_cone(UNIT)
    np.testing.assert_allclose(W, np.eye(2), atol=1e-15)
    np.testing.assert_allclose(b, [0.0, 0.0], atol=1e-15)
    W, b = params_from_cone(GOLDEN)
    np.testing.assert_allclose(W, GOLDEN_W, atol=1e-15)
    np.testing.assert_allclose(b, [-0.5, -0.5], atol=1e-15)
    W, b = params_from_cone(PolyhedralCone([0.0], [[2.0]]))
    np.testing.assert_allclose(W, [[0.5]])
    np.testing.assert_allclose(b, [0.0])


def test_degenerate_edges():
    with pytest.raises(DegenerateEdges):
        PolyhedralCone([0.0, 0.0], [[1.0, 1.0], [2.0, 2.0]])
    with pytest.raises(DegenerateEdges):
        PolyhedralCone([0.0], [[1.0], [2.0]])
    with pytest.raises(DimensionMismatch):
        PolyhedralCone([0.0, 0.0, 0.0], np.eye(2))


def _random_cone(rng, m=None, n=None):
    n = n or rng.integers(1, 9)
    m = m or rng.integers(1, n + 1)
    return PolyhedralCone(rng.standard_normal(n), random_full_rank(rng, m, n))


def test_cone_invariants(rng):
    for _ in range(100):
        c = _random_cone(rng)
        np.testing.assert_allclose(c.edges @ c.W.T, np.eye(c.n_edges), atol=1e-10)
        np.testing.assert_allclose(c.b, -c.W @ c.p, atol=1e-10)


def test_round_trip(rng):
    for _ in range(100):
        c = _random_cone(rng)
        back = cone_from_params(*params_from_cone(c))
        np.testing.assert_allclose(back.edges, c.edges, atol=1e-10)
        np.testing.assert_allclose(back.p, c.apex_image, atol=1e-10)


def test_coefficients_examples():
    cc = coefficients(UNIT, [2.0, -1.0])
    np.testing.assert_allclose(cc.a, [2.0, -1.0])
    np.testing.assert_allclose(cc.kernel_part, [0.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(coefficients(GOLDEN, [0.0, 0.0]).a, [-0.5, -0.5])
    np.testing.assert_allclose(coefficients(GOLDEN, [2.0, 0.0]).a, [0.5, -1.5])
    with pytest.raises(DimensionMismatch):
        coefficients(GOLDEN, [1.0])


def test_coefficients_reconstruct(rng):
    for _ in range(100):
        c = _random_cone(rng)
        x = rng.standard_normal(c.dim)
        cc = coefficients(c, x)
        np.testing.assert_allclose(c.p + cc.kernel_part + cc.a @ c.edges, x, atol=1e-10)
        np.testing.assert_allclose(c.W @ cc.kernel_part, 0.0, atol=1e-10)


def test_truncate_via_cone_examples():
    np.testing.assert_allclose(truncate_via_cone(UNIT, [2.0, -1.0]), [2.0, 0.0])
    np.testing.assert_allclose(truncate_via_cone(GOLDEN, [0.0, 0.0]), [0.0, 1.0], atol=1e-15)
    np.testing.assert_allclose(truncate_via_cone(GOLDEN, [2.0, 0.0]), [0.5, 1.5], atol=1e-15)


def test_truncate_via_cone_agrees_with_truncate(rng):
    for _ in range(300):
        c = _random_cone(rng)
        t = TruncationParams(*params_from_cone(c))
        x = rng.standard_normal(c.dim) * 3
        np.testing.assert_allclose(truncate_via_cone(c, x), truncate(t, x), atol=1e-9)


def test_membership_examples():
    assert membership(UNIT, [1.0, 2.0]) is Region.SPLUS
    assert membership(UNIT, [-1.0, -2.0]) is Region.SMINUS
    assert membership(UNIT, [1.0, -1.0]) is Region.COMPLEMENT
    assert membership(UNIT, [0.0, 0.0]) is Region.BOTH
    assert membership(UNIT, [[1.0, 2.0], [1.0, -1.0]]) == [Region.SPLUS, Region.COMPLEMENT]


def test_membership_kernel_blind():
    c = PolyhedralCone([0.0, 0.0, 0.0], [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    assert membership(c, [-1.0, -1.0, 100.0]) is Region.SMINUS


def test_membership_behavior_full_cones(rng):
    for _ in range(200):
        c = _random_cone(rng, *(2 * [rng.integers(1, 6)]))
        t = TruncationParams(c.W, c.b)
        a = rng.standard_normal(c.n_edges)
        for coeffs in (np.abs(a), -np.abs(a)):
            x = c.p + coeffs @ c.edges
            region = membership(c, x)
            if region is Region.SPLUS:
                np.testing.assert_allclose(truncate(t, x), x, atol=1e-9 * (1 + np.abs(x).max()))
            elif region is Region.SMINUS:
                np.testing.assert_allclose(truncate(t, x), c.p, atol=1e-9 * (1 + np.abs(x).max()))


def test_complement_lands_on_boundary(rng):
    for _ in range(200):
        c = _random_cone(rng, *(2 * [rng.integers(2, 6)]))
        a = rng.standard_normal(c.n_edges)
        a[0], a[1] = abs(a[0]) + 0.1, -abs(a[1]) - 0.1
        x = c.p + a @ c.edges
        assert membership(c, x) is Region.COMPLEMENT
        image_coeffs = c.edge_coefficients(truncate_via_cone(c, x))
        assert np.min(np.abs(image_coeffs)) <= 1e-9


def test_face_hyperplane_examples():
    normal, offset = face_hyperplane(UNIT, 0)
    np.testing.assert_allclose(normal, [1.0, 0.0])
    assert offset == 0.0
    normal, offset = face_hyperplane(GOLDEN, 0)
    np.testing.assert_allclose(normal, [0.5, 0.5])
    assert abs(offset - 0.5) <= 1e-15
    with pytest.raises(IndexError):
        face_hyperplane(UNIT, 2)
    with pytest.raises(NotFullCone):
        face_hyperplane(PolyhedralCone([0.0, 0.0], [[1.0, 0.0]]), 0)


def test_face_hyperplane_contains_face(rng):
    for _ in range(50):
        c = _random_cone(rng, *(2 * [rng.integers(1, 7)]))
        for k in range(c.n_edges):
            normal, offset = face_hyperplane(c, k)
            for i, v in enumerate(c.edges):
                expected = offset + (1.0 if i == k else 0.0)
                assert abs(normal @ (c.p + v) - expected) <= 1e-10 * (1 + abs(offset))


def test_simplex_contains_examples():
    seg = Simplex([[-1.0], [1.0]])
    assert simplex_contains(seg, [0.0])
    assert not simplex_contains(seg, [2.0])
    tri = Simplex([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    np.testing.assert_allclose(tri.barycentric([0.25, 0.25]), [0.5, 0.25, 0.25])
    assert simplex_contains(tri, [0.25, 0.25])
    np.testing.assert_array_equal(simplex_contains(tri, [[0.25, 0.25], [1.0, 1.0]]), [True, False])


def test_degenerate_simplex():
    with pytest.raises(DegenerateSimplex):
        Simplex([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
    with pytest.raises(DegenerateSimplex):
        Simplex([[0.0, 0.0], [1.0, 1.0]])


def _facet_distance(vertices, center, skip):
    """Distance from ``center`` to the hyperplane through all vertices but ``skip``."""
    face = np.delete(vertices, skip, axis=0)
    diffs = face[1:] - face[0]
    normal = np.linalg.svd(diffs)[2][-1] if len(diffs) else np.ones(1)
    return abs((center - face[0]) @ normal) / np.linalg.norm(normal)


def test_regular_simplex_examples():
    s = regular_simplex_with_inball([0.0], 1.0)
    np.testing.assert_allclose(sorted(s.vertices.ravel()), [-1.0, 1.0])
    for n in (2, 3, 5):
        center = np.arange(n, dtype=float)
        s = regular_simplex_with_inball(center, 1.0)
        np.testing.assert_allclose(np.linalg.norm(s.vertices - center, axis=1), n, rtol=1e-12)
        for k in range(n + 1):
            assert abs(_facet_distance(s.vertices, center, k) - 1.0) <= 1e-12
        edge_lengths = [np.linalg.norm(a - b) for a, b in itertools.combinations(s.vertices, 2)]
        np.testing.assert_allclose(edge_lengths, edge_lengths[0], rtol=1e-12)


def test_regular_simplex_contains_inball(rng):
    s = regular_simplex_with_inball(np.zeros(3), 1.25)
    d = rng.standard_normal((200, 3))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    assert np.all(simplex_contains(s, d * 1.2499))
