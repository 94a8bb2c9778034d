"""Polyhedral cones attached to ReLU truncation maps, and simplices.

A cone is a base point ``p`` in R^n and ``m <= n`` linearly independent edges
``v_1, ..., v_m``. Its parameters are ``W = pinv([v_1 ... v_m])`` and
``b = -W p``, so the edge coefficients of a point are simply ``W x + b``. The
truncation map keeps the positive coefficients and drops the rest::

    tau(x) = pinv(W) W p + sum_{a_i > 0} a_i v_i

When ``m < n`` the cone is blind to the kernel of ``W``: membership only looks
at the coefficients.
"""

import enum
from dataclasses import dataclass

import numpy as np

from ._validation import as_matrix, as_points, as_vector, frozen
from .exceptions import DegenerateEdges, DegenerateSimplex, DimensionMismatch, NotFullCone
from .linalg import DEFAULT_RANK_TOL, pinv, rank

MEMBERSHIP_TOL = 1e-9


class Region(enum.Enum):
    SPLUS = "SPlus"
    SMINUS = "SMinus"
    BOTH = "Both"
    COMPLEMENT = "Complement"

    @property
    def in_splus(self):
        return self in (Region.SPLUS, Region.BOTH)

    @property
    def in_sminus(self):
        return self in (Region.SMINUS, Region.BOTH)


@dataclass(frozen=True, init=False)
class PolyhedralCone:
    """Base point ``p`` and edges (rows of ``edges``) with derived ``W`` and ``b``."""

    p: np.ndarray
    edges: np.ndarray
    W: np.ndarray
    b: np.ndarray

    def __init__(self, p, edges, tol=DEFAULT_RANK_TOL):
        p = as_vector(p, "p")
        edges = as_matrix(np.atleast_2d(edges), "edges")
        m, n = edges.shape
        if n != p.shape[0]:
            raise DimensionMismatch(f"edges live in R^{n} but p is in R^{p.shape[0]}")
        if m > n or rank(edges, tol) < m:
            raise DegenerateEdges(f"{m} edges in R^{n} are not linearly independent")
        W = pinv(edges.T, tol)
        object.__setattr__(self, "p", frozen(p))
        object.__setattr__(self, "edges", frozen(edges))
        object.__setattr__(self, "W", frozen(W))
        object.__setattr__(self, "b", frozen(-W @ p))

    @property
    def dim(self):
        return self.edges.shape[1]

    @property
    def n_edges(self):
        return self.edges.shape[0]

    @property
    def is_full(self):
        return self.n_edges == self.dim

    @property
    def apex_image(self):
        """``pinv(W) W p``: where every point of the negative cone is sent."""
        return self.edges.T @ (self.W @ self.p)

    def edge_coefficients(self, x):
        X, single = as_points(x, self.dim)
        a = X @ self.W.T + self.b
        return a[0] if single else a


@dataclass(frozen=True)
class ConeCoordinates:
    a: np.ndarray
    kernel_part: np.ndarray


@dataclass(frozen=True)
class Simplex:
    vertices: np.ndarray

    def __post_init__(self):
        V = as_matrix(self.vertices, "vertices")
        n = V.shape[1]
        if V.shape[0] != n + 1:
            raise DegenerateSimplex(f"an {n}-simplex needs {n + 1} vertices, got {V.shape[0]}")
        if rank(V[1:] - V[0]) < n:
            raise DegenerateSimplex("vertices are affinely dependent")
        object.__setattr__(self, "vertices", frozen(V))

    @property
    def dim(self):
        return self.vertices.shape[1]

    @property
    def centroid(self):
        return self.vertices.mean(axis=0)

    @property
    def circumradius(self):
        """Largest distance from the centroid to a vertex."""
        return float(np.max(np.linalg.norm(self.vertices - self.centroid, axis=1)))

    def barycentric(self, x):
        X, single = as_points(x, self.dim)
        A = np.vstack([self.vertices.T, np.ones(self.dim + 1)])
        rhs = np.hstack([X, np.ones((len(X), 1))])
        lam = np.linalg.solve(A, rhs.T).T
        return lam[0] if single else lam


def cone_from_params(W, b, tol=DEFAULT_RANK_TOL):
    """Cone of the truncation map with surjective ``W``: ``p = -pinv(W) b``, ``v_i = pinv(W) e_i``.

    The base point comes out canonical (orthogonal to ``ker W``).
    """
    W = as_matrix(W, "W")
    b = as_vector(b, "b")
    if b.shape[0] != W.shape[0]:
        raise DimensionMismatch(f"b has length {b.shape[0]}, expected {W.shape[0]}")
    Wp = pinv(W, tol)
    return PolyhedralCone(-Wp @ b, Wp.T, tol)


def params_from_cone(cone):
    """``(W, b)`` realizing ``cone``; ``W`` is invertible for a full cone."""
    return cone.W, cone.b


def coefficients(cone, x):
    """Decompose ``x = p + kernel_part + sum_i a_i v_i`` with ``a = W x + b``."""
    x = as_vector(x, "x")
    if x.shape[0] != cone.dim:
        raise DimensionMismatch(f"x has dim {x.shape[0]}, cone lives in R^{cone.dim}")
    a = cone.W @ x + cone.b
    return ConeCoordinates(a, x - cone.p - a @ cone.edges)


def truncate_via_cone(cone, x):
    """Closed-form truncation: keep the positive edge coefficients of ``x``.

    Independent of :func:`truncnet.truncation.truncate`; used as its oracle.
    """
    X, single = as_points(x, cone.dim)
    a = X @ cone.W.T + cone.b
    out = cone.apex_image + np.where(a > 0, a, 0.0) @ cone.edges
    return out[0] if single else out


def _classify(a, tol):
    if np.all(np.abs(a) <= tol):
        return Region.BOTH
    if np.all(a >= -tol):
        return Region.SPLUS
    if np.all(a <= tol):
        return Region.SMINUS
    return Region.COMPLEMENT


def membership(cone, x, tol=MEMBERSHIP_TOL):
    """Classify ``x`` against the positive and negative cones.

    Boundary points count as inside (``tol`` is absolute, on the coefficients);
    ``p`` itself is ``Region.BOTH``. For a batch, returns a list of regions.
    """
    X, single = as_points(x, cone.dim)
    a = X @ cone.W.T + cone.b
    regions = [_classify(row, tol) for row in a]
    return regions[0] if single else regions


def face_hyperplane(cone, k):
    """Hyperplane through the face ``a_k = 0`` in normal form.

    ``k`` is a 0-based edge index. Returns ``(normal, offset)`` with
    ``normal @ y == offset`` on the face: the normal is row ``k`` of ``W``
    (zero on the other edges, one on ``v_k``) and the offset is ``-b_k``.
    """
    if not cone.is_full:
        raise NotFullCone(f"cone has {cone.n_edges} edges in R^{cone.dim}")
    if not 0 <= k < cone.n_edges:
        raise IndexError(f"face index {k} out of range for {cone.n_edges} faces")
    return cone.W[k].copy(), float(-cone.b[k])


def simplex_contains(simplex, x, tol=MEMBERSHIP_TOL):
    """True where every barycentric coordinate of ``x`` is ``>= -tol``."""
    lam = simplex.barycentric(x)
    return np.all(lam >= -tol, axis=-1) if lam.ndim == 2 else bool(np.all(lam >= -tol))


def _helmert_basis(k):
    # (k-1) x k, orthonormal rows spanning the complement of the ones vector
    H = np.zeros((k - 1, k))
    for i in range(1, k):
        H[i - 1, :i] = 1.0
        H[i - 1, i] = -float(i)
        H[i - 1] /= np.sqrt(i * (i + 1.0))
    return H


def regular_simplex_with_inball(center, inradius):
    """Regular simplex around ``center`` whose inscribed ball has radius ``inradius``.

    The circumradius is ``n * inradius``. The orientation is fixed: vertices
    are the centred standard simplex of R^{n+1} expressed in a Helmert basis.
    """
    center = as_vector(center, "center")
    if inradius <= 0:
        raise ValueError("inradius must be positive")
    n = center.shape[0]
    E = np.eye(n + 1) - 1.0 / (n + 1)
    V = E @ _helmert_basis(n + 1).T
    V *= n * inradius / np.linalg.norm(V[0])
    return Simplex(V + center)
