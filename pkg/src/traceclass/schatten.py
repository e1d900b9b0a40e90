"""Trace, Schatten norms and the trace-class toolkit.

The trace norm is computed as the sum of singular values.  The basis
formulas ``sum_k <|T| b_k, b_k>`` are available through
:func:`basis_trace_sums` so the two routes can be compared.
"""

import numpy as np

from . import kernel
from .errors import (
    DimensionMismatchError,
    InvalidPError,
    KOutOfRangeError,
    NotUnitaryError,
    NTooSmallError,
)

__all__ = [
    "trace",
    "schatten_norm",
    "trace_norm",
    "hs_norm",
    "hs_inner",
    "basis_trace_sums",
    "factor_hs",
    "truncate_spectral",
    "dual_attainment",
    "shift_matrix",
]


def trace(t):
    """Sum of the diagonal entries of a square matrix."""
    return complex(np.trace(kernel.require_square(t)))


def schatten_norm(t, p, method=None):
    """Schatten p-norm ``(sum_k s_k**p)**(1/p)``; ``p=inf`` gives the operator norm.

    Any ``p > 0`` is accepted, though for ``p < 1`` the result is only a
    quasi-norm.
    """
    t = kernel.require_square(t)
    p = float(p)
    if not p > 0:
        raise InvalidPError(f"p must be positive, got {p}")
    s = kernel.singular_values(t, method=method)
    if np.isinf(p):
        return float(s[0])
    if p == 1.0:
        return float(s.sum())
    if p == 2.0:
        return float(np.sqrt(np.sum(s * s)))
    smax = s[0]
    if smax == 0.0:
        return 0.0
    # scale out s_max so large p does not overflow
    return float(smax * np.sum((s / smax) ** p) ** (1.0 / p))


def trace_norm(t, method=None):
    return schatten_norm(t, 1, method=method)


def hs_norm(t, method=None):
    return schatten_norm(t, 2, method=method)


def hs_inner(t, s):
    """Hilbert-Schmidt inner product ``tr(S^H T)``, linear in ``t``."""
    t = kernel.as_matrix(t)
    s = kernel.as_matrix(s)
    if t.shape != s.shape:
        raise DimensionMismatchError(f"shapes differ: {t.shape} vs {s.shape}")
    return complex(np.vdot(s, t))


def _check_unitary(b, tol):
    n = b.shape[0]
    if np.linalg.norm(b.conj().T @ b - np.eye(n)) > tol * max(1.0, n):
        raise NotUnitaryError("basis matrix is not unitary within tolerance")


def basis_trace_sums(t, basis, tol=1e-8):
    """Diagonal sums of ``T`` and ``|T|`` in the orthonormal basis given by the columns of ``basis``.

    Returns
    -------
    total : complex
        ``sum_k <T b_k, b_k>``
    abs_total : float
        ``sum_k |<T b_k, b_k>|``
    abs_op_total : float
        ``sum_k <|T| b_k, b_k>``, which equals the trace norm in every basis.
    """
    t = kernel.require_square(t)
    b = kernel.require_square(basis)
    if b.shape != t.shape:
        raise DimensionMismatchError(f"basis shape {b.shape} does not match {t.shape}")
    _check_unitary(b, tol)
    diag = np.einsum("ik,ij,jk->k", b.conj(), t, b)
    abs_diag = np.einsum("ik,ij,jk->k", b.conj(), kernel.abs_op(t), b)
    return complex(diag.sum()), float(np.abs(diag).sum()), float(abs_diag.real.sum())


def factor_hs(t, method=None):
    """Split ``T`` into two Hilbert-Schmidt factors ``T = A @ B``.

    Uses ``A = W |T|^(1/2)`` and ``B = |T|^(1/2)``; this pair attains
    ``||A||_2 ||B||_2 = ||T||_1``.
    """
    t = kernel.require_square(t)
    u, s, v = kernel.svd(t, method=method)
    root = np.sqrt(s)
    b = (v * root) @ v.conj().T
    # W |T|^(1/2) = U diag(sqrt(s)) V^H; the support projector is absorbed by sqrt(0) = 0
    a = (u * root) @ v.conj().T
    return a, 0.5 * (b + b.conj().T)


def truncate_spectral(t, k, method=None):
    """Best rank-``k`` approximation ``U diag(s_1..s_k, 0, ...) V^H``."""
    t = kernel.require_square(t)
    n = t.shape[0]
    if not 0 <= k <= n:
        raise KOutOfRangeError(f"k must lie in [0, {n}], got {k}")
    if k == n:
        return t.copy()
    u, s, v = kernel.svd(t, method=method)
    return (u[:, :k] * s[:k]) @ v[:, :k].conj().T


def dual_attainment(t, rank_tol=None, method=None):
    """Contraction ``S = W^H`` attaining ``Re tr(S T) = ||T||_1``.

    ``W`` is the partial isometry of the polar decomposition, so ``S`` acts
    as zero on the kernel of ``T^H`` and ``||S|| <= 1``.
    """
    t = kernel.require_square(t)
    w, _ = kernel.polar(t, rank_tol=rank_tol, method=method)
    s = w.conj().T
    return s, float(np.trace(s @ t).real)


def shift_matrix(n):
    """Truncated unilateral shift: ``e_k -> e_{k+1}`` for ``k < n`` and ``e_n -> 0``."""
    if n < 2:
        raise NTooSmallError(f"shift needs n >= 2, got {n}")
    return np.eye(n, k=-1, dtype=np.complex128)
