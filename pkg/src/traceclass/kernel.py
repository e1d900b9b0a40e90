"""Dense complex linear algebra used by the rest of the package.

Matrices are plain ``numpy.ndarray`` values of dtype ``complex128``; use
:func:`as_matrix` to validate and convert.  Two numerical back ends are
available for the eigen/singular value problems:

``"lapack"``
    numpy's LAPACK bindings (default; fast enough for the ensemble runner).
``"jacobi"``
    cyclic two-sided Jacobi for Hermitian matrices, and an SVD built on top
    of it that falls back to one-sided Jacobi near rank deficiency.

The default back end can be changed with the ``TRACECLASS_METHOD``
environment variable, the default relative tolerance with ``TRACECLASS_TOL``.
"""

import os
from typing import NamedTuple

import numpy as np

from .errors import (
    EmptyMatrixError,
    NoConvergenceError,
    NonFiniteError,
    NonSquareError,
    NotHermitianError,
    NotPsdError,
)

__all__ = [
    "DEFAULT_TOL",
    "RANK_TOL",
    "SvdFactors",
    "PolarFactors",
    "as_matrix",
    "require_square",
    "adjoint",
    "hermitian_eig",
    "svd",
    "singular_values",
    "sqrt_psd",
    "abs_op",
    "polar",
    "operator_norm",
]

DEFAULT_TOL = float(os.environ.get("TRACECLASS_TOL", "1e-9"))
RANK_TOL = 1e-10
DEFAULT_METHOD = os.environ.get("TRACECLASS_METHOD", "lapack")

_MAX_SWEEPS = 60
_SVD_FALLBACK_RATIO = 1e-8


class SvdFactors(NamedTuple):
    """Thin SVD ``A = U @ diag(s) @ V^H`` with ``s`` descending."""

    U: np.ndarray
    s: np.ndarray
    V: np.ndarray

    def reconstruct(self):
        return (self.U * self.s) @ self.V.conj().T


class PolarFactors(NamedTuple):
    """``T = W @ P`` with ``W`` a partial isometry and ``P = |T|``."""

    W: np.ndarray
    P: np.ndarray


def as_matrix(a):
    """Return ``a`` as a 2-D complex array, rejecting empty or non-finite input."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if m.size == 0:
        raise EmptyMatrixError("empty matrices are not supported")
    if not np.all(np.isfinite(m)):
        raise NonFiniteError("matrix has NaN or infinite entries")
    return m


def require_square(a):
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise NonSquareError(f"expected a square matrix, got shape {m.shape}")
    return m


def adjoint(a):
    return np.asarray(a).conj().T


def _jacobi_rotation(alpha, beta, g):
    # 2x2 unitary J such that J^H [[alpha, g], [conj(g), beta]] J is diagonal.
    ag = abs(g)
    phase = g / ag
    zeta = (beta - alpha) / (2.0 * ag)
    t = np.copysign(1.0, zeta) / (abs(zeta) + np.hypot(1.0, zeta))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = c * t
    ph = np.conj(phase)
    return np.array([[c, s], [-s * ph, c * ph]])


def _jacobi_eigh(h):
    a = h.copy()
    n = a.shape[0]
    q = np.eye(n, dtype=np.complex128)
    scale = np.linalg.norm(a)
    if n == 1 or scale == 0.0:
        return a.diagonal().real.copy(), q
    thresh = 1e-17 * scale
    for _ in range(_MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(a.diagonal()))
        if off <= 1e-15 * scale:
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                g = a[p, r]
                if abs(g) <= thresh:
                    continue
                j = _jacobi_rotation(a[p, p].real, a[r, r].real, g)
                idx = [p, r]
                a[:, idx] = a[:, idx] @ j
                a[idx, :] = j.conj().T @ a[idx, :]
                a[p, r] = a[r, p] = 0.0
                a[p, p] = a[p, p].real
                a[r, r] = a[r, r].real
                q[:, idx] = q[:, idx] @ j
    else:
        raise NoConvergenceError(f"Jacobi sweep limit ({_MAX_SWEEPS}) reached")
    return a.diagonal().real.copy(), q


def hermitian_eig(h, tol=None, method=None):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, Q)`` with ``w`` real and descending and ``Q`` unitary such
    that ``h = Q @ diag(w) @ Q^H``.  Raises ``NotHermitianError`` if
    ``||h - h^H|| > tol * ||h||``.
    """
    h = require_square(h)
    tol = DEFAULT_TOL if tol is None else tol
    scale = np.linalg.norm(h)
    if np.linalg.norm(h - h.conj().T) > tol * scale:
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    h = 0.5 * (h + h.conj().T)
    method = method or DEFAULT_METHOD
    if method == "jacobi":
        w, q = _jacobi_eigh(h)
    elif method == "lapack":
        w, q = np.linalg.eigh(h)
    else:
        raise ValueError(f"unknown method {method!r}")
    order = np.argsort(-w, kind="stable")
    return w[order], q[:, order]


def _complete_columns(u, mask):
    """Replace the columns of ``u`` flagged in ``mask`` by an orthonormal completion."""
    need = int(mask.sum())
    kept = [u[:, k] for k in range(u.shape[1]) if not mask[k]]
    extra = []
    for e in np.eye(u.shape[0], dtype=np.complex128):
        if len(extra) == need:
            break
        v = e.copy()
        for _ in range(2):
            for b in kept + extra:
                v -= (b.conj() @ v) * b
        nv = np.linalg.norm(v)
        if nv > 0.5:
            extra.append(v / nv)
    out = u.copy()
    it = iter(extra)
    for k in np.flatnonzero(mask):
        out[:, k] = next(it)
    return out


def _one_sided_jacobi(a):
    # Hestenes one-sided Jacobi; requires rows >= cols.
    b = a.copy()
    n = b.shape[1]
    v = np.eye(n, dtype=np.complex128)
    for _ in range(_MAX_SWEEPS):
        rotated = False
        for p in range(n - 1):
            for r in range(p + 1, n):
                bp, br = b[:, p], b[:, r]
                alpha = np.vdot(bp, bp).real
                beta = np.vdot(br, br).real
                g = np.vdot(bp, br)
                if abs(g) <= 1e-15 * np.sqrt(alpha * beta) or abs(g) == 0.0:
                    continue
                rotated = True
                j = _jacobi_rotation(alpha, beta, g)
                idx = [p, r]
                b[:, idx] = b[:, idx] @ j
                v[:, idx] = v[:, idx] @ j
        if not rotated:
            break
    else:
        raise NoConvergenceError(f"one-sided Jacobi sweep limit ({_MAX_SWEEPS}) reached")
    s = np.linalg.norm(b, axis=0)
    order = np.argsort(-s, kind="stable")
    s, b, v = s[order], b[:, order], v[:, order]
    zero = s <= 1e-300
    u = np.where(zero, 0.0, b / np.where(zero, 1.0, s))
    if zero.any():
        u = _complete_columns(u, zero)
    return u, s, v


def _jacobi_svd(a):
    m, n = a.shape
    if m < n:
        u, s, v = _jacobi_svd(a.conj().T)
        return v, s, u
    w, v = _jacobi_eigh(a.conj().T @ a)
    order = np.argsort(-w, kind="stable")
    w, v = w[order], v[:, order]
    s = np.sqrt(np.clip(w, 0.0, None))
    if s[0] == 0.0 or s[-1] / s[0] < _SVD_FALLBACK_RATIO:
        return _one_sided_jacobi(a)
    u = (a @ v) / s
    return u, s, v


def svd(a, method=None):
    """Thin singular value decomposition.

    ``len(s) == min(rows, cols)``; singular values descend and are
    nonnegative.  With ``method="jacobi"`` the right singular vectors come
    from a Jacobi eigendecomposition of ``A^H A``; when the condition ratio
    ``s_min / s_max`` drops below 1e-8 the one-sided Jacobi method is used
    instead because squaring loses the small singular values.
    """
    a = as_matrix(a)
    method = method or DEFAULT_METHOD
    if method == "jacobi":
        u, s, v = _jacobi_svd(a)
    elif method == "lapack":
        try:
            u, s, vh = np.linalg.svd(a, full_matrices=False)
        except np.linalg.LinAlgError as exc:
            raise NoConvergenceError(str(exc)) from exc
        v = vh.conj().T
    else:
        raise ValueError(f"unknown method {method!r}")
    return SvdFactors(u, s, v)


def singular_values(a, method=None):
    method = method or DEFAULT_METHOD
    if method == "lapack":
        try:
            return np.linalg.svd(as_matrix(a), compute_uv=False)
        except np.linalg.LinAlgError as exc:
            raise NoConvergenceError(str(exc)) from exc
    return svd(a, method=method).s


def sqrt_psd(p, tol=None, method=None):
    """Hermitian PSD square root; eigenvalues in ``[-tol*||p||, 0)`` are clamped to 0."""
    tol = DEFAULT_TOL if tol is None else tol
    w, q = hermitian_eig(p, tol=tol, method=method)
    scale = max(abs(w[0]), abs(w[-1]))
    if w[-1] < -tol * scale:
        raise NotPsdError(f"eigenvalue {w[-1]:.3e} below -tol*||P||")
    r = (q * np.sqrt(np.clip(w, 0.0, None))) @ q.conj().T
    return 0.5 * (r + r.conj().T)


def abs_op(t, method=None):
    """``|T| = (T^H T)^(1/2)``.

    Assembled from the SVD as ``V diag(s) V^H``.  That is the same matrix as
    ``sqrt_psd(T^H T)`` but keeps full relative accuracy on small singular
    values, which forming ``T^H T`` would square away.
    """
    t = require_square(t)
    _, s, v = svd(t, method=method)
    p = (v * s) @ v.conj().T
    return 0.5 * (p + p.conj().T)


def support_mask(s, rank_tol=None):
    """Boolean mask of singular values above ``rank_tol * s_max``."""
    rank_tol = RANK_TOL if rank_tol is None else rank_tol
    if s.size == 0:
        return np.zeros(0, dtype=bool)
    return s > rank_tol * s[0]


def polar(t, rank_tol=None, method=None):
    """Polar decomposition ``T = W |T|`` of a square matrix.

    With ``T = U S V^H``, ``W = U D V^H`` where ``D`` keeps only singular
    values above ``rank_tol * s_max``, so ``W^H W`` is the projection onto
    the orthogonal complement of the kernel.
    """
    t = require_square(t)
    u, s, v = svd(t, method=method)
    d = support_mask(s, rank_tol).astype(float)
    w = (u * d) @ v.conj().T
    p = (v * s) @ v.conj().T
    return PolarFactors(w, 0.5 * (p + p.conj().T))


def operator_norm(t, method=None):
    """Largest singular value."""
    return float(singular_values(t, method=method)[0])
