import numpy as np
import pytest

from truncnet.cones import PolyhedralCone, Region, Simplex, membership, regular_simplex_with_inball
from truncnet.constructors import (
    LabeledDataset,
    LabelPair,
    build_interpolating_network,
    check_linear_separability,
    collapse_stage,
    cone_construction,
    lift_and_cone,
    output_affine,
    separate_by_cone,
    simplex_construction,
)
from truncnet.exceptions import (
    Class1OutsideCone,
    Class1OutsideSimplex,
    Class2InsideCone,
    Class2InsideSimplex,
    CoincidentPoints,
    DegenerateLabels,
    EmptyClass,
)
from truncnet.network import cumulative_params, forward
from truncnet.truncation import TruncationParams, truncate, truncation_trajectory

UNIT = PolyhedralCone([0.0, 0.0], np.eye(2))
GOLDEN_DATA = LabeledDataset.from_classes([[0.0]], [[-2.0], [2.0]])
SEGMENT = Simplex([[-1.0], [1.0]])


def _golden_certificate():
    emb, cone = lift_and_cone(SEGMENT, 1.0)
    lifted = LabeledDataset(GOLDEN_DATA.X @ emb.T, GOLDEN_DATA.y)
    return separate_by_cone(cone, lifted), lifted


def test_separate_unit_cone():
    data = LabeledDataset.from_classes([[-1.0, -1.0], [-2.0, -0.5]], [[1.0, 1.0], [2.0, 0.0]])
    cert = separate_by_cone(UNIT, data)
    assert cert.a_tilde == 1.0
    t = TruncationParams(UNIT.W, UNIT.b)
    np.testing.assert_allclose(cert.g(truncate(t, data.X1)), [-0.5, -0.5])
    np.testing.assert_allclose(cert.g(truncate(t, data.X2)), [1.5, 1.5])


def test_separate_golden_lifted():
    cert, lifted = _golden_certificate()
    assert abs(cert.a_tilde - 0.5) <= 1e-12
    np.testing.assert_allclose(cert.q0, [0.0, 1.0], atol=1e-12)
    assert abs(cert.g(cert.q0) + 0.25) <= 1e-12
    t = cert.truncation
    np.testing.assert_allclose(cert.g(truncate(t, lifted.X2)), [0.25, 0.25], atol=1e-12)


def test_separate_preconditions():
    with pytest.raises(Class2InsideCone):
        separate_by_cone(UNIT, LabeledDataset.from_classes([[-1.0, -1.0]], [[-0.5, -3.0]]))
    with pytest.raises(Class1OutsideCone):
        separate_by_cone(UNIT, LabeledDataset.from_classes([[1.0, -1.0]], [[1.0, 1.0]]))
    with pytest.raises(EmptyClass):
        separate_by_cone(UNIT, LabeledDataset([[1.0, 1.0]], [2]))


def test_margin_certificate_random(rng):
    for _ in range(100):
        n = rng.integers(2, 6)
        m = rng.integers(1, n + 1)
        cone = PolyhedralCone(rng.standard_normal(n), rng.standard_normal((m, n)))
        a1 = -rng.random((20, m))
        a2 = rng.uniform(-1, 1, (20, m))
        a2[:, 0] = rng.uniform(0.01, 1, 20)
        X = cone.p + np.vstack([a1, a2]) @ cone.edges
        # components in ker W do not change the coefficients
        noise = rng.standard_normal((40, n))
        X = X + noise - noise @ (cone.edges.T @ cone.W).T
        data = LabeledDataset(X, np.r_[np.ones(20), 2 * np.ones(20)])
        cert = separate_by_cone(cone, data)
        t = cert.truncation
        np.testing.assert_allclose(cert.g(truncate(t, data.X1)), -cert.a_tilde / 2, atol=1e-9)
        assert np.all(cert.g(truncate(t, data.X2)) >= cert.a_tilde / 2 - 1e-9)


def test_lift_and_cone_golden():
    emb, cone = lift_and_cone(SEGMENT, 1.0)
    np.testing.assert_array_equal(emb, [[1.0], [0.0]])
    np.testing.assert_allclose(cone.p, [0.0, 1.0])
    np.testing.assert_allclose(cone.edges, [[1.0, 1.0], [-1.0, 1.0]])
    np.testing.assert_allclose(cone.W, 0.5 * np.array([[1.0, 1.0], [-1.0, 1.0]]), atol=1e-15)
    np.testing.assert_allclose(cone.b, [-0.5, -0.5], atol=1e-15)
    a = cone.edge_coefficients(np.array([[0.0, 0.0], [2.0, 0.0], [-2.0, 0.0]]))
    np.testing.assert_allclose(a, [[-0.5, -0.5], [0.5, -1.5], [-1.5, 0.5]], atol=1e-15)
    assert membership(cone, [0.0, 0.0]) is Region.SMINUS
    assert membership(cone, [2.0, 0.0]) is Region.COMPLEMENT


def test_lift_and_cone_default_height_is_circumradius():
    tri = regular_simplex_with_inball([0.0, 0.0], 1.0)
    _, cone = lift_and_cone(tri)
    assert abs(cone.p[-1] - 2.0) <= 1e-12


def test_lift_and_cone_slice_equals_simplex(rng):
    tri = regular_simplex_with_inball([0.0, 0.0], 1.0)
    emb, cone = lift_and_cone(tri, 1.0)
    V = tri.vertices
    lam = rng.dirichlet(np.ones(3), 100)
    inside = lam @ V
    edge = rng.integers(0, 3, 100)
    t = rng.random(100)[:, None]
    boundary = V[edge] * t + V[(edge + 1) % 3] * (1 - t)
    for x in np.vstack([inside, boundary]):
        assert membership(cone, emb @ x).in_sminus
    outside = []
    while len(outside) < 100:
        x = rng.uniform(-6, 6, 2)
        if np.min(tri.barycentric(x)) < -1e-6:
            outside.append(x)
    for x in outside:
        assert membership(cone, emb @ x) in (Region.COMPLEMENT, Region.SPLUS)


def test_collapse_stage_golden():
    cert, lifted = _golden_certificate()
    Y2 = truncate(cert.truncation, lifted.X2)
    stage = collapse_stage(cert, Y2)
    np.testing.assert_allclose(stage.W2, [[0.0, -1.0], [1.0, 0.0]], atol=1e-12)
    np.testing.assert_allclose(stage.b2, [1.25, -1.5], atol=1e-12)
    coeff = lambda y: stage.W2 @ y + stage.b2
    np.testing.assert_allclose(coeff(cert.q0), [0.25, -1.5], atol=1e-12)
    np.testing.assert_allclose(coeff(np.array([0.5, 1.5])), [-0.25, -1.0], atol=1e-12)
    np.testing.assert_allclose(coeff(np.array([-0.5, 1.5])), [-0.25, -2.0], atol=1e-12)
    np.testing.assert_allclose(stage.A2, [1.5, 1.25], atol=1e-12)
    np.testing.assert_allclose(stage.A1, [1.5, 1.0], atol=1e-12)
    t2 = TruncationParams(stage.W2, stage.b2)
    np.testing.assert_allclose(truncate(t2, Y2), [stage.A2, stage.A2], atol=1e-12)
    np.testing.assert_allclose(truncate(t2, cert.q0), stage.A1, atol=1e-12)


def test_collapse_stage_empty():
    cert, _ = _golden_certificate()
    with pytest.raises(EmptyClass):
        collapse_stage(cert, np.empty((0, 2)))


def test_output_affine_examples():
    W, b = output_affine([1.5, 1.0], [1.5, 1.25], LabelPair((1.0, 0.0), (0.0, 1.0)))
    np.testing.assert_allclose(W, [[0.0, -4.0], [0.0, 4.0]], atol=1e-12)
    np.testing.assert_allclose(b, [5.0, -4.0], atol=1e-12)
    np.testing.assert_allclose(W @ [1.5, 1.0] + b, [1.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(W @ [1.5, 1.25] + b, [0.0, 1.0], atol=1e-12)
    W, b = output_affine([1.0], [0.0], LabelPair((1.0, 0.0), (0.0, 1.0)))
    np.testing.assert_allclose(W, [[1.0], [-1.0]])
    np.testing.assert_allclose(b, [0.0, 1.0])
    with pytest.raises(CoincidentPoints):
        output_affine([1.0, 2.0], [1.0, 2.0])


def test_label_pair_must_be_independent():
    with pytest.raises(DegenerateLabels):
        LabelPair((1.0, 2.0), (2.0, 4.0))


def test_golden_network():
    net = build_interpolating_network(GOLDEN_DATA, SEGMENT, height=1.0)
    assert net.dims == (1, 2, 2, 2)
    np.testing.assert_allclose(forward(net, [0.0])[-1], [1.0, 0.0], atol=1e-10)
    np.testing.assert_allclose(forward(net, [2.0])[-1], [0.0, 1.0], atol=1e-10)
    np.testing.assert_allclose(forward(net, [-2.0])[-1], [0.0, 1.0], atol=1e-10)


def test_simplex_route_preconditions():
    with pytest.raises(Class2InsideSimplex):
        simplex_construction(LabeledDataset.from_classes([[0.0]], [[0.5], [2.0]]), SEGMENT)
    with pytest.raises(Class1OutsideSimplex):
        simplex_construction(LabeledDataset.from_classes([[1.5]], [[3.0]]), SEGMENT)
    with pytest.raises(DegenerateLabels):
        simplex_construction(GOLDEN_DATA, SEGMENT, LabelPair((1.0, 1.0), (2.0, 2.0)))


def _assembly_consistent(c):
    cp = cumulative_params(c.network, first_override=c.first_square if c.iota is not None else None)
    for ell in (1, 2):
        W, b = c.theta[ell]
        np.testing.assert_allclose(cp.weights[ell], W, atol=1e-9)
        np.testing.assert_allclose(cp.biases[ell], b, atol=1e-9)


def test_assembly_consistency_golden():
    _assembly_consistent(simplex_construction(GOLDEN_DATA, SEGMENT, height=1.0))


def test_simplex_route_random_dims(rng):
    for d in (1, 2, 3, 4):
        s = regular_simplex_with_inball(rng.standard_normal(d), 1.0)
        lam = rng.dirichlet(np.ones(d + 1), 30)
        X1 = lam @ s.vertices
        X2 = []
        while len(X2) < 30:
            x = s.centroid + rng.standard_normal(d) * 3 * d
            if np.min(s.barycentric(x)) < -1e-3:
                X2.append(x)
        data = LabeledDataset.from_classes(X1, X2)
        labels = LabelPair((2.0, -1.0), (0.5, 3.0))
        c = simplex_construction(data, s, labels)
        assert c.network.dims == (d, d + 1, 2, 2)
        target = np.where(data.y[:, None] == 1, labels.y1, labels.y2)
        np.testing.assert_allclose(forward(c.network, data.X)[-1], target, atol=1e-6)
        np.testing.assert_allclose(truncation_trajectory(c.network, data.X)[1], target, atol=1e-6)
        _assembly_consistent(c)


def test_cone_route_with_kernel_directions(rng):
    # 2 edges in R^3: the cone ignores the third direction
    cone = PolyhedralCone([0.5, -1.0, 2.0], [[1.0, 0.2, 0.0], [0.0, 1.0, 0.5]])
    a1 = -rng.uniform(0.1, 1.0, (25, 2))
    a2 = rng.uniform(-1.0, 1.0, (25, 2))
    a2[:, 1] = rng.uniform(0.2, 1.0, 25)
    normal = np.cross(*cone.edges)
    X = cone.p + np.vstack([a1, a2]) @ cone.edges + rng.standard_normal((50, 1)) * normal
    data = LabeledDataset(X, np.r_[np.ones(25), 2 * np.ones(25)])
    c = cone_construction(data, cone)
    assert c.network.dims == (3, 2, 2, 2)
    target = np.where(data.y[:, None] == 1, [1.0, 0.0], [0.0, 1.0])
    np.testing.assert_allclose(forward(c.network, data.X)[-1], target, atol=1e-6)
    _assembly_consistent(c)


def test_perceptron_examples():
    res = check_linear_separability([[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]], [1, 2, 2])
    assert res is not None
    normal, offset = res
    assert normal @ [0.0, 0.0] + offset < 0
    assert normal @ [1.0, 1.0] + offset > 0 and normal @ [2.0, 0.0] + offset > 0
    xor = [[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]]
    assert check_linear_separability(xor, [1, 1, 2, 2], max_iters=10_000) is None
    normal, offset = check_linear_separability([[0.0, 1.0], [3.0, 2.0]], [1, 1])
    assert np.all(np.array([[0.0, 1.0], [3.0, 2.0]]) @ normal + offset < 0)
