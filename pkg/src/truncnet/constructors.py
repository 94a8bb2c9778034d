"""Closed-form interpolating networks for two-class data.

Two routes are provided, both ending in a network with two hidden layers and a
2-D (or wider) label space:

* cone route: class 1 sits in the negative cone of a given polyhedral cone and
  class 2 outside it. One truncation collapses class 1 to a single point and
  leaves class 2 strictly on the other side of an explicit hyperplane.
* simplex route: class 1 sits in a simplex and class 2 outside it. The data
  is embedded one dimension up and a cone is erected over the simplex, which
  reduces to the cone route.

A second truncation then collapses class 2 to a point, and an affine map sends
the two collapse points to the label vectors. No training is involved.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import as_matrix, as_points, as_vector, frozen
from .cones import PolyhedralCone, Simplex
from .exceptions import (
    Class1OutsideCone,
    Class1OutsideSimplex,
    Class2InsideCone,
    Class2InsideSimplex,
    CoincidentPoints,
    DegenerateLabels,
    DimensionMismatch,
    EmptyClass,
    RankDeficient,
)
from .linalg import iota as inclusion
from .linalg import pinv, rank
from .network import Network
from .truncation import TruncationParams, truncate

MEMBERSHIP_TOL = 1e-9
# coefficients at or below this count as non-positive when collecting the margin
POSITIVE_THRESHOLD = 1e-12
COINCIDENT_TOL = 1e-12


@dataclass(frozen=True)
class LabeledDataset:
    """Points ``X`` of shape ``(N, d)`` with labels in ``{1, 2}``."""

    X: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        X = as_matrix(np.atleast_2d(self.X), "X")
        y = np.asarray(self.y).astype(int).ravel()
        if len(y) != len(X):
            raise DimensionMismatch(f"{len(X)} points but {len(y)} labels")
        if not np.all(np.isin(y, (1, 2))):
            raise ValueError("labels must be 1 or 2")
        y = y.copy()
        y.setflags(write=False)
        object.__setattr__(self, "X", frozen(X))
        object.__setattr__(self, "y", y)

    @classmethod
    def from_classes(cls, X1, X2):
        X1 = np.atleast_2d(np.asarray(X1, dtype=float))
        X2 = np.atleast_2d(np.asarray(X2, dtype=float))
        return cls(np.vstack([X1, X2]), np.r_[np.ones(len(X1)), 2 * np.ones(len(X2))])

    @property
    def dim(self):
        return self.X.shape[1]

    @property
    def X1(self):
        return self.X[self.y == 1]

    @property
    def X2(self):
        return self.X[self.y == 2]

    def __len__(self):
        return len(self.y)


@dataclass(frozen=True)
class LabelPair:
    y1: np.ndarray
    y2: np.ndarray

    def __post_init__(self):
        y1 = as_vector(self.y1, "y1")
        y2 = as_vector(self.y2, "y2")
        if y1.shape != y2.shape:
            raise DimensionMismatch("label vectors must have the same length")
        if rank(np.vstack([y1, y2])) < 2:
            raise DegenerateLabels("label vectors must be linearly independent")
        object.__setattr__(self, "y1", frozen(y1))
        object.__setattr__(self, "y2", frozen(y2))

    @property
    def matrix(self):
        return np.vstack([self.y1, self.y2])


DEFAULT_LABELS = LabelPair((1.0, 0.0), (0.0, 1.0))


@dataclass(frozen=True)
class SeparationCertificate:
    """Witness that one truncation makes the two classes linearly separable.

    The separating functional is ``g(y) = eta @ y - c`` with ``eta = W.T @ 1``
    and ``c = -sum(b) + a_tilde / 2``. On truncated class 1 it equals
    ``-a_tilde / 2``; on truncated class 2 it is at least ``a_tilde / 2``.
    """

    cone: PolyhedralCone
    a_tilde: float
    eta: np.ndarray
    c: float
    q0: np.ndarray

    def g(self, y):
        return np.asarray(y, dtype=float) @ self.eta - self.c

    @property
    def truncation(self):
        return TruncationParams(self.cone.W, self.cone.b)


def separate_by_cone(cone, data, tol=MEMBERSHIP_TOL):
    """Margin certificate for data split by the negative cone of ``cone``.

    Raises
    ------
    EmptyClass
        If either class has no points.
    Class1OutsideCone
        If a class-1 point has a coefficient above ``tol``.
    Class2InsideCone
        If a class-2 point has no coefficient above the positivity threshold.
    """
    if data.dim != cone.dim:
        raise DimensionMismatch(f"data in R^{data.dim}, cone in R^{cone.dim}")
    X1, X2 = data.X1, data.X2
    if len(X1) == 0 or len(X2) == 0:
        raise EmptyClass("both classes need at least one point")
    a1 = cone.edge_coefficients(X1)
    bad = np.flatnonzero(np.any(a1 > tol, axis=1))
    if bad.size:
        raise Class1OutsideCone(f"{bad.size} class-1 points are outside the negative cone")
    a2 = cone.edge_coefficients(X2)
    positive = a2 > POSITIVE_THRESHOLD
    bad = np.flatnonzero(~np.any(positive, axis=1))
    if bad.size:
        raise Class2InsideCone(f"{bad.size} class-2 points lie in the negative cone")
    a_tilde = float(np.min(a2[positive]))
    eta = cone.W.sum(axis=0)
    c = float(-cone.b.sum() + a_tilde / 2)
    return SeparationCertificate(cone, a_tilde, frozen(eta), c, frozen(cone.apex_image))


def lift_and_cone(simplex, height=None):
    """Embed a simplex of R^n into R^{n+1} and erect a cone over it.

    The apex sits ``height`` above the centroid (default: the circumradius)
    and the edges point from each vertex to the apex, so the negative cone
    meets the hyperplane ``x_{n+1} = 0`` exactly in the embedded simplex.

    Returns
    -------
    iota : ndarray, shape (n+1, n)
    cone : PolyhedralCone in R^{n+1}
    """
    if not isinstance(simplex, Simplex):
        simplex = Simplex(simplex)
    if height is None:
        height = simplex.circumradius
    if height <= 0:
        raise ValueError("height must be positive")
    n = simplex.dim
    emb = inclusion(n, n + 1)
    S = simplex.vertices @ emb.T
    p = simplex.centroid @ emb.T
    p[n] = height
    return emb, PolyhedralCone(p, p - S)


@dataclass(frozen=True)
class CollapseStage:
    """Second truncation ``(W2, b2)`` and the two points the classes land on."""

    W2: np.ndarray
    b2: np.ndarray
    A1: np.ndarray
    A2: np.ndarray


def _slack_direction(row, W):
    """Unit vector in the row space of ``W`` orthogonal to ``row``."""
    P = pinv(W) @ W
    r = row / np.linalg.norm(row)
    for j in range(P.shape[0]):
        u = P[:, j] - (P[:, j] @ r) * r
        norm = np.linalg.norm(u)
        if norm > 1e-8:
            return u / norm
    raise RankDeficient("no slack direction: the cone needs at least two edges")


def collapse_stage(cert, truncated_class2, truncated_class1=None):
    """Build the truncation that sends all of class 2 to one point.

    Row 1 of ``W2`` is ``-eta`` with offset ``c``, so its coefficient is
    ``-g``: negative on class 2, ``+a_tilde/2`` on class 1. Row 2 is a unit
    slack direction whose offset keeps its coefficient at most ``-1`` on all
    data. Class 2 therefore lands in the negative cone of the new truncation
    and collapses to ``A2``; class 1 lands on ``A1 = A2 + (a_tilde/2) v'_1``.

    ``truncated_class1`` defaults to the single collapse point ``q0``.
    """
    Y2 = np.atleast_2d(np.asarray(truncated_class2, dtype=float))
    if Y2.size == 0:
        raise EmptyClass("no truncated class-2 points given")
    Y1 = cert.q0[None, :] if truncated_class1 is None else np.atleast_2d(truncated_class1)
    row1 = -cert.eta
    u = _slack_direction(row1, cert.cone.W)
    W2 = np.vstack([row1, u])
    slack = np.max(np.vstack([Y1, Y2]) @ u)
    b2 = np.array([cert.c, -slack - 1.0])
    if rank(W2) < 2:
        raise RankDeficient("collapse weights are rank deficient")
    W2p = pinv(W2)
    A2 = W2p @ (W2 @ (-W2p @ b2))
    A1 = A2 + (cert.a_tilde / 2) * W2p[:, 0]
    return CollapseStage(frozen(W2), frozen(b2), frozen(A1), frozen(A2))


def output_affine(A1, A2, labels=DEFAULT_LABELS):
    """Minimal-norm affine map with ``A1 -> y1`` and ``A2 -> y2``.

    The weight is the rank-one matrix ``(y1 - y2) d^T / |d|^2`` with
    ``d = A1 - A2``.
    """
    A1 = as_vector(A1, "A1")
    A2 = as_vector(A2, "A2")
    d = A1 - A2
    dd = d @ d
    if np.sqrt(dd) <= COINCIDENT_TOL:
        raise CoincidentPoints("collapse points coincide")
    W3 = np.outer(labels.y1 - labels.y2, d) / dd
    return W3, labels.y1 - W3 @ A1


@dataclass(frozen=True)
class Construction:
    """Everything produced along the way to an interpolating network.

    ``theta`` holds the cumulative parameters of the truncation form;
    ``first_square`` is the square first factor (the cone's ``W``), and
    ``iota`` is the input embedding, or ``None`` on the cone route.
    """

    network: Network
    kind: str
    certificate: SeparationCertificate
    collapse: CollapseStage
    theta: tuple
    first_square: np.ndarray
    iota: np.ndarray = None

    @property
    def a_tilde(self):
        return self.certificate.a_tilde

    @property
    def cone(self):
        return self.certificate.cone


def _assemble(cone, collapse, W3c, b3c, emb):
    W_first, b_first = cone.W, cone.b
    # pinv(W_first) is the edge matrix; for a square cone it is the exact inverse
    first_inv = cone.edges.T
    W1 = W_first if emb is None else W_first @ emb
    W2 = collapse.W2 @ first_inv
    b2 = collapse.b2 - W2 @ b_first
    W3 = W3c @ pinv(collapse.W2)
    b3 = b3c - W3 @ collapse.b2
    return Network.from_params([(W1, b_first), (W2, b2), (W3, b3)])


def _construct(cone, data, labels, emb, kind):
    lifted_X = data.X if emb is None else data.X @ emb.T
    lifted = LabeledDataset(lifted_X, data.y)
    cert = separate_by_cone(cone, lifted)
    t1 = cert.truncation
    collapse = collapse_stage(cert, truncate(t1, lifted.X2), truncate(t1, lifted.X1))
    W3c, b3c = output_affine(collapse.A1, collapse.A2, labels)
    net = _assemble(cone, collapse, W3c, b3c, emb)
    theta = ((cone.W, cone.b), (collapse.W2, collapse.b2), (frozen(W3c), frozen(b3c)))
    return Construction(net, kind, cert, collapse, theta, cone.W, emb)


def cone_construction(data, cone, labels=DEFAULT_LABELS):
    """Cone route: network of dims ``(d0, m, 2, k)`` for ``m`` cone edges."""
    if cone.n_edges < 2:
        raise DimensionMismatch("the cone route needs at least two edges")
    return _construct(cone, data, labels, None, "cone")


def simplex_construction(data, simplex, labels=DEFAULT_LABELS, height=None):
    """Simplex route: network of dims ``(d0, d0 + 1, 2, k)``.

    Raises
    ------
    Class1OutsideSimplex, Class2InsideSimplex, DegenerateLabels
    """
    if not isinstance(simplex, Simplex):
        simplex = Simplex(simplex)
    if data.dim != simplex.dim:
        raise DimensionMismatch(f"data in R^{data.dim}, simplex in R^{simplex.dim}")
    if len(data.X1) == 0 or len(data.X2) == 0:
        raise EmptyClass("both classes need at least one point")
    lam1 = np.atleast_2d(simplex.barycentric(data.X1))
    if np.any(lam1 < -MEMBERSHIP_TOL):
        raise Class1OutsideSimplex("some class-1 points lie outside the simplex")
    lam2 = np.atleast_2d(simplex.barycentric(data.X2))
    if np.any(np.all(lam2 >= -POSITIVE_THRESHOLD, axis=1)):
        raise Class2InsideSimplex("some class-2 points lie in the simplex")
    emb, cone = lift_and_cone(simplex, height)
    return _construct(cone, data, labels, emb, "simplex")


def build_interpolating_network(data, simplex, labels=DEFAULT_LABELS, height=None):
    """Two-hidden-layer ReLU network mapping class ``j`` exactly onto ``y_j``."""
    return simplex_construction(data, simplex, labels, height).network


def build_cone_network(data, cone, labels=DEFAULT_LABELS):
    return cone_construction(data, cone, labels).network


def check_linear_separability(points, labels, max_iters=1_000_000):
    """Look for a hyperplane separating class 1 from class 2 with a perceptron.

    Points are centred and scaled, then augmented with a constant coordinate.
    The search stops after ``max_iters`` updates.

    Returns
    -------
    (normal, offset) or None
        ``normal @ x + offset`` is negative on class 1 and positive on class 2.
        ``None`` means the search was inconclusive, not that the data are
        inseparable.
    """
    X, _ = as_points(points, np.shape(points)[-1])
    labels = np.asarray(labels).ravel()
    if len(labels) != len(X):
        raise DimensionMismatch(f"{len(X)} points but {len(labels)} labels")
    if max_iters <= 0:
        raise ValueError("max_iters must be positive")
    sign = np.where(labels == 2, 1.0, -1.0)
    shift = X.mean(axis=0)
    scale = max(float(np.max(np.linalg.norm(X - shift, axis=1))), 1e-300)
    Z = np.hstack([(X - shift) / scale, np.ones((len(X), 1))]) * sign[:, None]
    w = np.zeros(Z.shape[1])
    updates = 0
    while updates < max_iters:
        wrong = np.flatnonzero(Z @ w <= 0)
        if wrong.size == 0:
            normal = w[:-1] / scale
            return normal, float(w[-1] - normal @ shift)
        # matmul and row dot can round differently; always take the first flagged row
        for k, i in enumerate(wrong):
            if k == 0 or Z[i] @ w <= 0:
                w = w + Z[i]
                updates += 1
                if updates >= max_iters:
                    break
    return None
