"""Feedforward ReLU networks: layers, forward pass, cumulative parameters.

Hidden layers are always ReLU-activated and the last layer is affine. Batched
inputs use the row convention: a batch is an array of shape ``(k, d)`` and a
layer maps it to ``X @ W.T + b``.
"""

from dataclasses import dataclass, field

import numpy as np

from ._validation import as_matrix, as_points, as_vector, frozen
from .exceptions import DimensionMismatch, OverrideInconsistent
from .linalg import DEFAULT_RANK_TOL, iota, rank


def relu(x):
    """Componentwise ``max(x, 0)``."""
    return np.maximum(np.asarray(x, dtype=float), 0.0)


@dataclass(frozen=True)
class AffineLayer:
    W: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        W = as_matrix(self.W, "W")
        b = as_vector(self.b, "b")
        if W.shape[0] != b.shape[0]:
            raise DimensionMismatch(
                f"W has {W.shape[0]} rows but b has length {b.shape[0]}"
            )
        object.__setattr__(self, "W", frozen(W))
        object.__setattr__(self, "b", frozen(b))

    @property
    def in_dim(self):
        return self.W.shape[1]

    @property
    def out_dim(self):
        return self.W.shape[0]

    def __call__(self, X):
        return X @ self.W.T + self.b


@dataclass(frozen=True)
class Network:
    """An ordered stack of affine layers with chained dimensions."""

    layers: tuple

    def __post_init__(self):
        layers = tuple(
            l if isinstance(l, AffineLayer) else AffineLayer(*l) for l in self.layers
        )
        if not layers:
            raise ValueError("a network needs at least one layer")
        for k in range(1, len(layers)):
            if layers[k].in_dim != layers[k - 1].out_dim:
                raise DimensionMismatch(
                    f"layer {k + 1} expects input dim {layers[k].in_dim}, "
                    f"previous layer outputs {layers[k - 1].out_dim}"
                )
        object.__setattr__(self, "layers", layers)

    @classmethod
    def from_params(cls, params):
        """Build from an iterable of ``(W, b)`` pairs."""
        return cls(tuple(AffineLayer(W, b) for W, b in params))

    @property
    def dims(self):
        return (self.layers[0].in_dim,) + tuple(l.out_dim for l in self.layers)

    @property
    def depth(self):
        return len(self.layers)

    def __call__(self, x):
        return forward(self, x)[-1]


def forward(net, x):
    """Run the network and return every activation ``x^(0), ..., x^(L)``.

    ``x`` may be a single point of shape ``(d0,)`` or a batch ``(k, d0)``; the
    returned activations have the matching shape.
    """
    X, single = as_points(x, net.dims[0])
    acts = [X]
    for k, layer in enumerate(net.layers):
        pre = layer(acts[-1])
        acts.append(pre if k == net.depth - 1 else relu(pre))
    return [a[0] for a in acts] if single else acts


@dataclass(frozen=True)
class CumulativeParams:
    """Products ``W_l ... W_1`` and matching biases, one pair per layer.

    In the lifted form the first factor is the square completion of ``W_1``
    instead of ``W_1`` itself; the biases are the same in both forms.
    """

    weights: tuple
    biases: tuple
    lifted: bool = False

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, k):
        return self.weights[k], self.biases[k]

    def __iter__(self):
        return iter(zip(self.weights, self.biases))


def cumulative_params(net, first_override=None, tol=1e-10):
    """Cumulative weights and biases of ``net``.

    Parameters
    ----------
    net : Network
    first_override : array_like, shape (d1, d1), optional
        Square matrix ``W1_tilde`` with ``W1_tilde @ iota(d0, d1) == W_1``.
        When given, it replaces ``W_1`` as the first factor of every product.
    tol : float
        Max-abs tolerance on the consistency of ``first_override``.

    Raises
    ------
    DimensionMismatch
        If ``first_override`` is not ``d1 x d1``.
    OverrideInconsistent
        If its leading columns do not reproduce ``W_1``.
    """
    first = net.layers[0]
    W = first.W
    if first_override is not None:
        W = as_matrix(first_override, "first_override")
        d0, d1 = first.in_dim, first.out_dim
        if W.shape != (d1, d1) or d0 > d1:
            raise DimensionMismatch(
                f"first_override must be {d1}x{d1} with d0 <= d1, got {W.shape}"
            )
        if np.max(np.abs(W @ iota(d0, d1) - first.W)) > tol:
            raise OverrideInconsistent("first_override @ iota does not equal W_1")
    weights, biases = [W], [first.b]
    for layer in net.layers[1:]:
        weights.append(layer.W @ weights[-1])
        biases.append(layer.W @ biases[-1] + layer.b)
    return CumulativeParams(
        tuple(frozen(w) for w in weights),
        tuple(frozen(b) for b in biases),
        lifted=first_override is not None,
    )


@dataclass(frozen=True)
class ArchitectureReport:
    dims: tuple
    ranks: tuple
    full_rank: tuple
    pattern: str
    messages: tuple = field(default=())

    @property
    def supported(self):
        # only hidden layers feed a truncation map; the affine output layer may be rank deficient
        return self.pattern != "unsupported" and all(self.full_rank[:-1])

    @property
    def route(self):
        return self.pattern if self.supported else None


def _dims_pattern(dims):
    tail_ok = all(dims[k] >= dims[k + 1] for k in range(1, len(dims) - 1))
    if dims[0] >= dims[1] and tail_ok:
        return "standard"
    if dims[0] < dims[1] and tail_ok:
        return "lifted"
    return "unsupported"


def validate_architecture(net, tol=DEFAULT_RANK_TOL):
    """Diagnose whether ``net`` admits a truncation-map rewrite.

    Returns an :class:`ArchitectureReport` rather than raising. ``pattern`` is
    ``"standard"`` for non-increasing widths, ``"lifted"`` when only the first
    layer widens, ``"unsupported"`` otherwise.
    """
    dims = net.dims
    ranks = tuple(rank(l.W, tol) for l in net.layers)
    full = tuple(r == min(l.W.shape) for r, l in zip(ranks, net.layers))
    pattern = _dims_pattern(dims)
    messages = []
    if pattern == "unsupported":
        messages.append(f"dims {dims} are neither d0>=d1>=... nor d0<d1>=d2>=...")
    for k, ok in enumerate(full[:-1]):
        if not ok:
            messages.append(f"hidden layer {k + 1} is rank deficient (rank {ranks[k]})")
    return ArchitectureReport(dims, ranks, full, pattern, tuple(messages))
