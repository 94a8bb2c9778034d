"""Small input-coercion helpers shared by every module."""

import numpy as np

from .exceptions import DimensionMismatch


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite 2-D float array (a copy is made only if needed)."""
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionMismatch(f"{name} must have positive dimensions, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    return arr


def as_vector(a, name="vector"):
    arr = np.asarray(a, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise DimensionMismatch(f"{name} must be 1-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    return arr


def as_points(x, dim, name="x"):
    """Coerce a single point ``(dim,)`` or a batch ``(k, dim)``.

    Returns the 2-D batch and a flag telling whether the input was a single
    point, so callers can squeeze their result back.
    """
    arr = np.asarray(x, dtype=float)
    single = arr.ndim <= 1
    arr = np.atleast_2d(arr.reshape(1, -1) if single else arr)
    if arr.ndim != 2 or arr.shape[1] != dim:
        raise DimensionMismatch(
            f"{name} must have trailing dimension {dim}, got shape {np.shape(x)}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    return arr, single


def frozen(arr):
    """Read-only copy, used to keep value objects immutable."""
    out = np.array(arr, dtype=float, copy=True)
    out.setflags(write=False)
    return out
