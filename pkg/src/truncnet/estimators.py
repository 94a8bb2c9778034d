"""scikit-learn compatible wrappers.

``ConeTruncation`` is a transformer applying the truncation map of a fixed
cone. ``SimplexInterpolatingClassifier`` and ``ConeInterpolatingClassifier``
"fit" by constructing the closed-form interpolating network, then predict
with the nearest label vector. All three support ``get_params`` /
``set_params`` / ``clone`` and compose with sklearn pipelines.
"""

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .cones import PolyhedralCone, Simplex, membership
from .constructors import (
    LabeledDataset,
    LabelPair,
    cone_construction,
    simplex_construction,
)
from .network import forward
from .truncation import TruncationParams, truncate, truncation_trajectory


class ConeTruncation(TransformerMixin, BaseEstimator):
    """Truncation map of the cone with base point ``p`` and edges ``edges``.

    Parameters
    ----------
    p : array_like, shape (n,)
    edges : array_like, shape (m, n)
        Linearly independent edge vectors, one per row.

    Attributes
    ----------
    cone_ : PolyhedralCone
    W_, b_ : ndarray
        Parameters of the truncation map.
    n_features_in_ : int
    """

    def __init__(self, p=None, edges=None):
        self.p = p
        self.edges = edges

    def fit(self, X=None, y=None):
        if self.p is None or self.edges is None:
            raise ValueError("ConeTruncation needs both p and edges")
        self.cone_ = PolyhedralCone(self.p, self.edges)
        self.W_, self.b_ = self.cone_.W, self.cone_.b
        self._params = TruncationParams(self.W_, self.b_)
        self.n_features_in_ = self.cone_.dim
        return self

    def transform(self, X):
        check_is_fitted(self, "cone_")
        X = check_array(X)
        return truncate(self._params, X)

    def regions(self, X):
        """Region of each row of ``X`` relative to the cone."""
        check_is_fitted(self, "cone_")
        return membership(self.cone_, check_array(X))


class _InterpolatingClassifier(ClassifierMixin, BaseEstimator):
    def _labels(self):
        return LabelPair(self.y1, self.y2)

    def _dataset(self, X, y):
        X, y = check_X_y(X, y)
        self.classes_ = np.unique(y)
        if len(self.classes_) != 2:
            raise ValueError(f"need exactly two classes, got {len(self.classes_)}")
        inner = self.classes_[0] if self.inner_class is None else self.inner_class
        if inner not in self.classes_:
            raise ValueError(f"inner_class {inner!r} not among the labels")
        self.classes_ = np.array([inner, self.classes_[self.classes_ != inner][0]])
        self.n_features_in_ = X.shape[1]
        return LabeledDataset(X, np.where(y == inner, 1, 2))

    def _finish(self, construction):
        self.construction_ = construction
        self.network_ = construction.network
        self.a_tilde_ = construction.a_tilde
        return self

    def network_output(self, X):
        """Raw network output, one label-space vector per row."""
        check_is_fitted(self, "network_")
        return forward(self.network_, check_array(X))[-1]

    def truncation_output(self, X):
        """The same output computed through the chain of truncation maps."""
        check_is_fitted(self, "network_")
        return truncation_trajectory(self.network_, check_array(X))[1]

    def decision_function(self, X):
        """Signed score: positive means the second class of ``classes_``."""
        out = self.network_output(X)
        labels = self._labels()
        d1 = np.linalg.norm(out - labels.y1, axis=1)
        d2 = np.linalg.norm(out - labels.y2, axis=1)
        return d1 - d2

    def predict(self, X):
        return np.where(self.decision_function(X) > 0, self.classes_[1], self.classes_[0])


class SimplexInterpolatingClassifier(_InterpolatingClassifier):
    """Exact interpolation of data split by a simplex.

    Parameters
    ----------
    simplex : array_like, shape (d + 1, d)
        Vertices of a simplex containing the ``inner_class`` points and none
        of the others.
    height : float, optional
        Apex height of the lifted cone; defaults to the circumradius.
    y1, y2 : array_like
        Linearly independent label vectors for the inner and outer class.
    inner_class : label, optional
        Label of the points inside the simplex; defaults to the smallest label.
    """

    def __init__(self, simplex=None, height=None, y1=(1.0, 0.0), y2=(0.0, 1.0),
                 inner_class=None):
        self.simplex = simplex
        self.height = height
        self.y1 = y1
        self.y2 = y2
        self.inner_class = inner_class

    def fit(self, X, y):
        if self.simplex is None:
            raise ValueError("a separating simplex must be supplied")
        data = self._dataset(X, y)
        simplex = self.simplex if isinstance(self.simplex, Simplex) else Simplex(self.simplex)
        return self._finish(simplex_construction(data, simplex, self._labels(), self.height))


class ConeInterpolatingClassifier(_InterpolatingClassifier):
    """Exact interpolation of data split by a polyhedral cone.

    The ``inner_class`` points must lie in the negative cone spanned by
    ``edges`` at ``p``; all other points must have a positive edge coefficient.
    """

    def __init__(self, p=None, edges=None, y1=(1.0, 0.0), y2=(0.0, 1.0), inner_class=None):
        self.p = p
        self.edges = edges
        self.y1 = y1
        self.y2 = y2
        self.inner_class = inner_class

    def fit(self, X, y):
        if self.p is None or self.edges is None:
            raise ValueError("cone base point and edges must be supplied")
        data = self._dataset(X, y)
        return self._finish(cone_construction(data, PolyhedralCone(self.p, self.edges),
                                              self._labels()))
