"""Synthetic two-class data sets with a known separating simplex or cone.

Both generators are deterministic for a given seed (numpy ``default_rng``)
and return the companion geometry alongside the data.
"""

from dataclasses import dataclass

import numpy as np

from .cones import PolyhedralCone, regular_simplex_with_inball
from .constructors import LabeledDataset
from .exceptions import BadParams, BadRadii

DEFAULT_CRESCENT_P = (0.0, 0.0)
DEFAULT_CRESCENT_EDGES = ((1.0, 0.3), (-0.3, 1.0))


def _uniform_ball(rng, n, dim, radius):
    g = rng.standard_normal((n, dim))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return g * (radius * rng.random(n) ** (1.0 / dim))[:, None]


def _uniform_shell(rng, n, dim, lo, hi):
    g = rng.standard_normal((n, dim))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return g * rng.uniform(lo, hi, n)[:, None]


def gen_concentric(dim=2, n_inner=200, n_outer=200, r_inner=1.0, r_outer_lo=3.0,
                   r_outer_hi=4.0, simplex_inradius=None, seed=0):
    """Ball of class-1 points inside a spherical shell of class-2 points.

    Class 1 is uniform in the ball of radius ``r_inner``; class 2 has a
    uniform direction and a radius uniform in ``[r_outer_lo, r_outer_hi]``.
    The companion regular simplex is centred at the origin and must contain
    the inner ball while its circumradius (``dim * inradius``) stays below
    ``r_outer_lo``. By default its inradius is the midpoint of that range.

    Returns
    -------
    data : LabeledDataset
    simplex : Simplex
    """
    if dim < 1 or n_inner < 1 or n_outer < 1:
        raise BadParams("dim and class counts must be positive")
    if not 0 < r_inner < r_outer_lo < r_outer_hi:
        raise BadRadii(
            f"need 0 < r_inner < r_outer_lo < r_outer_hi, got "
            f"{r_inner}, {r_outer_lo}, {r_outer_hi}"
        )
    max_inradius = r_outer_lo / dim
    if simplex_inradius is None:
        if r_inner >= max_inradius:
            raise BadRadii(
                f"no regular simplex fits between r_inner={r_inner} and "
                f"r_outer_lo={r_outer_lo} in dimension {dim}"
            )
        simplex_inradius = 0.5 * (r_inner + max_inradius)
    if not r_inner <= simplex_inradius < max_inradius:
        raise BadRadii(
            f"simplex inradius {simplex_inradius} must lie in [{r_inner}, {max_inradius})"
        )
    rng = np.random.default_rng(seed)
    X1 = _uniform_ball(rng, n_inner, dim, r_inner)
    X2 = _uniform_shell(rng, n_outer, dim, r_outer_lo, r_outer_hi)
    simplex = regular_simplex_with_inball(np.zeros(dim), simplex_inradius)
    return LabeledDataset.from_classes(X1, X2), simplex


def gen_crescent(n1=100, n2=100, p=DEFAULT_CRESCENT_P, edges=DEFAULT_CRESCENT_EDGES,
                 margin=0.1, seed=0):
    """Class 1 deep inside a negative cone, class 2 in a band wrapped around it.

    Points are ``p + sum_i a_i v_i``. Class-1 coefficients are uniform in
    ``[-1, -0.05]``. For class 2 one coefficient, picked at random, is uniform
    in ``[margin, 1]`` and the others in ``[-1, 1]``, so every class-2 point
    has a coefficient of at least ``margin``.

    Returns
    -------
    data : LabeledDataset
    cone : PolyhedralCone
    """
    if not margin > 0 or margin > 1:
        raise BadParams(f"margin must lie in (0, 1], got {margin}")
    if n1 < 1 or n2 < 1:
        raise BadParams("class counts must be positive")
    try:
        cone = PolyhedralCone(p, edges)
    except ValueError as exc:
        raise BadParams(str(exc)) from exc
    m = cone.n_edges
    rng = np.random.default_rng(seed)
    a1 = rng.uniform(-1.0, -0.05, (n1, m))
    a2 = rng.uniform(-1.0, 1.0, (n2, m))
    hot = rng.integers(0, m, n2)
    a2[np.arange(n2), hot] = rng.uniform(margin, 1.0, n2)
    X1 = cone.p + a1 @ cone.edges
    X2 = cone.p + a2 @ cone.edges
    return LabeledDataset.from_classes(X1, X2), cone


@dataclass
class GenSpec:
    """Flat description of a generated data set, as the CLI collects it."""

    kind: str
    seed: int = 0
    dim: int = 2
    n_class1: int = 200
    n_class2: int = 200
    r_inner: float = 1.0
    r_outer_lo: float = 3.0
    r_outer_hi: float = 4.0
    simplex_inradius: float = None
    p: tuple = DEFAULT_CRESCENT_P
    edges: tuple = DEFAULT_CRESCENT_EDGES
    margin: float = 0.1

    def generate(self):
        if self.kind == "concentric":
            return gen_concentric(self.dim, self.n_class1, self.n_class2, self.r_inner,
                                  self.r_outer_lo, self.r_outer_hi, self.simplex_inradius,
                                  self.seed)
        if self.kind == "crescent":
            return gen_crescent(self.n_class1, self.n_class2, self.p, self.edges,
                                self.margin, self.seed)
        raise BadParams(f"unknown data kind {self.kind!r}")
