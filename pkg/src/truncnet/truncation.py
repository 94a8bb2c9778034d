"""Truncation maps and the rewrite of a ReLU network as a chain of them.

For a surjective ``W`` (``m x n``, ``m <= n``) and ``b`` in R^m, the
truncation map is ``x -> pinv(W) @ (relu(W x + b) - b)``. Composing these maps
with cumulative parameters reproduces every hidden activation of the network;
when the first layer widens, it is first factored through the inclusion
``iota`` and a square invertible completion.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from ._validation import as_matrix, as_points, as_vector, frozen
from .exceptions import DimensionMismatch, RankDeficient, UnsupportedArchitecture
from .linalg import (
    DEFAULT_RANK_TOL,
    complete_columns,
    condition_number,
    iota,
    pinv,
    rank,
)
from .network import cumulative_params, forward, relu, validate_architecture

ILL_CONDITIONED = 1e10


class IllConditionedWarning(UserWarning):
    pass


@dataclass(frozen=True, init=False)
class TruncationParams:
    """A surjective ``(W, b)`` pair with its pseudoinverse cached."""

    W: np.ndarray
    b: np.ndarray
    pinv: np.ndarray

    def __init__(self, W, b, tol=DEFAULT_RANK_TOL):
        W = as_matrix(W, "W")
        b = as_vector(b, "b")
        m, n = W.shape
        if b.shape[0] != m:
            raise DimensionMismatch(f"b has length {b.shape[0]}, expected {m}")
        if m > n or rank(W, tol) < m:
            raise RankDeficient(f"W of shape {W.shape} is not surjective")
        cond = condition_number(W)
        if cond > ILL_CONDITIONED:
            warnings.warn(
                f"truncation weight has condition number {cond:.3g}",
                IllConditionedWarning,
                stacklevel=2,
            )
        object.__setattr__(self, "W", frozen(W))
        object.__setattr__(self, "b", frozen(b))
        object.__setattr__(self, "pinv", frozen(pinv(W, tol)))

    @property
    def dim(self):
        return self.W.shape[1]

    def __call__(self, x):
        return truncate(self, x)


def truncate(t, x):
    """Apply the truncation map ``t`` to a point or a ``(k, n)`` batch."""
    X, single = as_points(x, t.dim)
    out = (relu(X @ t.W.T + t.b) - t.b) @ t.pinv.T
    return out[0] if single else out


@dataclass(frozen=True)
class LiftResult:
    """Factorization ``W = W_tilde @ iota`` of an injective ``W``."""

    iota: np.ndarray
    W_tilde: np.ndarray

    def relu_layer(self, x, b):
        """Evaluate ``relu(W x + b)`` through ``W_tilde`` and one truncation.

        This is the right-hand side of the width-lift identity; it equals the
        plain ReLU layer for every ``x``.
        """
        t = TruncationParams(self.W_tilde, b)
        X, single = as_points(x, self.iota.shape[1])
        out = truncate(t, X @ self.iota.T) @ self.W_tilde.T + t.b
        return out[0] if single else out


def lift(W, tol=DEFAULT_RANK_TOL):
    """Factor an injective ``m x n`` matrix (``n < m``) through ``iota(n, m)``."""
    W = as_matrix(W, "W")
    m, n = W.shape
    if n >= m:
        raise DimensionMismatch(f"lift needs n < m, got shape {W.shape}")
    W_tilde = complete_columns(W, tol)
    return LiftResult(frozen(iota(n, m)), frozen(W_tilde))


def _require_supported(net, tol):
    report = validate_architecture(net, tol)
    if not report.supported:
        raise UnsupportedArchitecture("; ".join(report.messages) or str(report.dims))
    return report


def _route_params(net, tol=DEFAULT_RANK_TOL):
    """Cumulative parameters for the route ``net`` admits, plus the input embedding."""
    report = _require_supported(net, tol)
    if report.route == "lifted":
        lifted = lift(net.layers[0].W, tol)
        return cumulative_params(net, first_override=lifted.W_tilde), lifted.iota
    return cumulative_params(net), None


def _run_route(params, emb, X, tol):
    state = X if emb is None else X @ emb.T
    states = [state]
    for W, b in list(params)[:-1]:
        state = truncate(TruncationParams(W, b, tol), state)
        states.append(state)
    W_L, b_L = params[len(params) - 1]
    return states, state @ W_L.T + b_L


def truncation_trajectory(net, x, tol=DEFAULT_RANK_TOL):
    """Push ``x`` through the truncation-map form of ``net``.

    Returns
    -------
    states : list of ndarray
        ``x^(tau,0), ..., x^(tau,L-1)``. On the lifted route the first state is
        ``iota @ x`` and all states live in R^{d1}.
    output : ndarray
        ``W^(L) x^(tau,L-1) + b^(L)``, which equals the network output.

    Raises
    ------
    UnsupportedArchitecture
    """
    params, emb = _route_params(net, tol)
    X, single = as_points(x, net.dims[0])
    states, output = _run_route(params, emb, X, tol)
    if single:
        return [s[0] for s in states], output[0]
    return states, output


@dataclass(frozen=True)
class EquivalenceReport:
    route: str
    n_inputs: int
    layer_max_abs: tuple
    layer_max_scaled: tuple
    tol: float

    @property
    def max_abs_deviation(self):
        return max(self.layer_max_abs)

    @property
    def max_scaled_deviation(self):
        return max(self.layer_max_scaled)

    @property
    def passed(self):
        return self.max_scaled_deviation <= self.tol


def verify_equivalence(net, inputs, tol=1e-8, rank_tol=DEFAULT_RANK_TOL):
    """Compare the forward pass with the truncation route layer by layer.

    At every layer ``l`` the activation ``x^(l)`` is compared with
    ``W^(l) x^(tau,l) + b^(l)``. Deviations are reported both absolute and
    scaled by ``1 + ||x^(l)||``; the scaled one decides pass/fail.
    """
    X, _ = as_points(inputs, net.dims[0])
    acts = forward(net, X)
    params, emb = _route_params(net, rank_tol)
    states, _ = _run_route(params, emb, X, rank_tol)
    L = net.depth
    max_abs, max_scaled = [], []
    for ell in range(1, L + 1):
        W, b = params[ell - 1]
        # the output layer reuses the last truncation state
        state = states[min(ell, L - 1)]
        rebuilt = state @ W.T + b
        diff = np.linalg.norm(rebuilt - acts[ell], axis=1)
        scale = 1.0 + np.linalg.norm(acts[ell], axis=1)
        max_abs.append(float(np.max(np.abs(rebuilt - acts[ell]))))
        max_scaled.append(float(np.max(diff / scale)))
    route = "standard" if emb is None else "lifted"
    return EquivalenceReport(route, len(X), tuple(max_abs), tuple(max_scaled), tol)
