"""Checks run by ``truncnet verify`` on a saved network and data set."""

import numpy as np

from .exceptions import UnsupportedArchitecture
from .network import forward
from .truncation import verify_equivalence

DEFAULT_LABELS = ((1.0, 0.0), (0.0, 1.0))


def _check(name, deviation, tol, passed=None):
    if passed is None:
        passed = deviation is not None and deviation <= tol
    return {
        "name": name,
        "max_deviation": None if deviation is None else float(deviation),
        "tolerance": float(tol),
        "passed": bool(passed),
    }


def nearest_label(outputs, label_vectors):
    """Index (0 or 1) of the closest label vector for each output row."""
    d = np.linalg.norm(outputs[:, None, :] - label_vectors[None, :, :], axis=2)
    return np.argmin(d, axis=1)


def verify_network(net, data, meta=None, tol=1e-8):
    """Run all checks and return ``(checks, stats)``.

    Checks: forward vs truncation route, interpolation error against the
    label vectors, nearest-label accuracy, and (when the margin is known from
    ``meta``) the separating functional on both classes. The functional is
    read off the first hidden layer: ``g = sum(x^(1)) - a_tilde / 2``.
    """
    meta = meta or {}
    labels = np.asarray(meta.get("labels", DEFAULT_LABELS), dtype=float)
    checks, stats = [], {}

    try:
        eq = verify_equivalence(net, data.X, tol)
        checks.append(_check("forward_vs_truncation", eq.max_scaled_deviation, tol))
        stats["route"] = eq.route
    except UnsupportedArchitecture as exc:
        checks.append(_check("forward_vs_truncation", None, tol, passed=False))
        stats["route"] = f"unsupported: {exc}"

    acts = forward(net, data.X)
    out = acts[-1]
    if out.shape[1] != labels.shape[1]:
        checks.append(_check("interpolation", None, tol, passed=False))
        return checks, stats
    target = labels[data.y - 1]
    err = np.linalg.norm(out - target, axis=1)
    checks.append(_check("interpolation", err.max(), tol))

    acc = float(np.mean(nearest_label(out, labels) == data.y - 1))
    stats["accuracy"] = acc
    checks.append(_check("accuracy", 1.0 - acc, 0.0))

    a_tilde = meta.get("a_tilde")
    if a_tilde is not None and net.depth >= 2:
        g = acts[1].sum(axis=1) - a_tilde / 2
        g1, g2 = g[data.y == 1], g[data.y == 2]
        if not (len(g1) and len(g2)):
            return checks, stats
        stats.update(a_tilde=float(a_tilde), g_class1_max=float(g1.max()),
                     g_class1_min=float(g1.min()), g_class2_min=float(g2.min()))
        checks.append(_check("margin_class1", np.max(np.abs(g1 + a_tilde / 2)), tol))
        checks.append(_check("margin_class2", max(0.0, a_tilde / 2 - g2.min()), tol))
    return checks, stats
