"""Dense linear algebra for full-rank matrices.

All routines go through the singular value decomposition, which doubles as
the rank check. Matrices are plain ``numpy`` arrays; nothing here mutates its
input.
"""

import numpy as np

from ._validation import as_matrix
from .exceptions import RankDeficient

DEFAULT_RANK_TOL = 1e-10


def rank(W, tol=DEFAULT_RANK_TOL):
    """Numerical rank: singular values above ``tol`` times the largest one."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    s = np.linalg.svd(as_matrix(W, "W"), compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def is_full_rank(W, tol=DEFAULT_RANK_TOL):
    W = as_matrix(W, "W")
    return rank(W, tol) == min(W.shape)


def _require_full_rank(W, s, tol, what="W"):
    r = 0 if s[0] == 0.0 else int(np.count_nonzero(s > tol * s[0]))
    if r < min(W.shape):
        raise RankDeficient(
            f"{what} of shape {W.shape} has numerical rank {r} < {min(W.shape)}"
        )


def pinv(W, tol=DEFAULT_RANK_TOL):
    """Moore-Penrose inverse of a full-rank matrix.

    Parameters
    ----------
    W : array_like, shape (m, n)
        Must have rank ``min(m, n)``.
    tol : float
        Relative singular-value threshold for the rank check.

    Returns
    -------
    ndarray, shape (n, m)
        ``W @ pinv(W) == I_m`` when ``W`` is surjective, ``pinv(W) @ W == I_n``
        when it is injective.

    Raises
    ------
    RankDeficient
    """
    W = as_matrix(W, "W")
    U, s, Vt = np.linalg.svd(W, full_matrices=False)
    _require_full_rank(W, s, tol)
    return (Vt.T / s) @ U.T


def condition_number(W):
    s = np.linalg.svd(as_matrix(W, "W"), compute_uv=False)
    return np.inf if s[-1] == 0.0 else float(s[0] / s[-1])


def _canonical_signs(B):
    # flip each column so its largest-magnitude entry is positive
    idx = np.argmax(np.abs(B), axis=0)
    signs = np.sign(B[idx, np.arange(B.shape[1])])
    signs[signs == 0] = 1.0
    return B * signs


def kernel_basis(W, tol=DEFAULT_RANK_TOL):
    """Orthonormal basis of ``ker W`` for a full-row-rank ``W``.

    Returns an array of shape ``(n - m, n)``; each row is a basis vector.
    The result is empty (shape ``(0, n)``) when ``W`` is invertible. Signs are
    fixed so that each vector's largest-magnitude entry is positive.
    """
    W = as_matrix(W, "W")
    m, n = W.shape
    if m > n:
        raise RankDeficient(f"W of shape {W.shape} cannot have full row rank")
    _, s, Vt = np.linalg.svd(W, full_matrices=True)
    _require_full_rank(W, s, tol)
    return _canonical_signs(Vt[m:].T).T.copy()


def iota(n, m):
    """Inclusion of R^n into R^m as the first ``n`` coordinates (``m x n``)."""
    if n > m:
        raise ValueError(f"need n <= m, got n={n}, m={m}")
    return np.eye(m, n)


def complete_columns(W, tol=DEFAULT_RANK_TOL):
    """Extend an injective ``m x n`` matrix to an invertible ``m x m`` one.

    The first ``n`` columns are copied verbatim, so
    ``complete_columns(W) @ iota(n, m)`` reproduces ``W`` bit for bit. The
    appended columns are an orthonormal basis of the orthogonal complement of
    the column space, signed canonically and with the last one chosen so the
    determinant is positive.

    Raises
    ------
    RankDeficient
        If ``W`` is not injective.
    """
    W = as_matrix(W, "W")
    m, n = W.shape
    if n > m:
        raise RankDeficient(f"W of shape {W.shape} cannot be injective")
    U, s, _ = np.linalg.svd(W, full_matrices=True)
    _require_full_rank(W, s, tol)
    if n == m:
        return W.copy()
    extra = _canonical_signs(U[:, n:])
    W_tilde = np.hstack([W, extra])
    if np.linalg.det(W_tilde) < 0:
        W_tilde[:, -1] *= -1.0
    return W_tilde
