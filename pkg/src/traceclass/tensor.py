"""Tensor-product elements, crossnorms and nuclear representations.

Conventions
-----------
A :class:`TensorElement` stores pairs ``(x_i, y_i)`` for ``sum_i x_i (x) y_i``
and is read through the bilinear coefficient matrix
``M[j, k] = sum_i x_i[j] y_i[k]`` (no conjugation).

Functionals on ``C^n`` are stored as Riesz vectors ``z`` with
``f(x) = <x, z> = z^H x``.  A :class:`NuclearRep` always holds Riesz vectors.
A :class:`TensorElement` whose first factor holds Riesz vectors of
functionals (an element of ``X* (x) Y``) sets ``riesz=True``; its
coefficient matrix then uses ``conj(z_i)``, the coordinates of ``f_i`` in the
dual basis.  Keep this in mind when moving between the two types: mixing,
norms and the K map all go through :func:`coeff_matrix`, so they honour the
flag automatically.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernel
from .errors import DimensionMismatchError, SingularMixError

__all__ = [
    "TensorElement",
    "NuclearRep",
    "BilinearForm",
    "single_tensor",
    "coeff_matrix",
    "projective_norm",
    "injective_norm",
    "representation_cost",
    "mix_representation",
    "pad_pairs",
    "k_map",
    "nuclear_apply",
    "to_matrix",
    "rep_cost",
    "optimal_rep",
    "adjoint_rep",
    "compose_rep",
    "concat_reps",
    "nuclear_norm",
    "linearize",
    "bilinearize",
    "apply_linearized",
    "bilinear_norm",
]


def _vectors(a, dim, name):
    a = np.asarray(a, dtype=np.complex128)
    if a.size == 0:
        return np.zeros((0, dim), dtype=np.complex128)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2 or a.shape[1] != dim:
        raise DimensionMismatchError(f"{name} vectors must have length {dim}, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} vectors contain NaN or infinite entries")
    return a


@dataclass(frozen=True, eq=False)
class TensorElement:
    """Finite sum ``sum_i xs[i] (x) ys[i]``; rows of ``xs``/``ys`` are the factors."""

    dim_x: int
    dim_y: int
    xs: np.ndarray = field(default=None)
    ys: np.ndarray = field(default=None)
    riesz: bool = False

    def __post_init__(self):
        xs = _vectors(self.xs if self.xs is not None else [], self.dim_x, "x")
        ys = _vectors(self.ys if self.ys is not None else [], self.dim_y, "y")
        if xs.shape[0] != ys.shape[0]:
            raise DimensionMismatchError(f"{xs.shape[0]} x-vectors but {ys.shape[0]} y-vectors")
        xs.setflags(write=False)
        ys.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @classmethod
    def from_pairs(cls, pairs, dim_x=None, dim_y=None, riesz=False):
        pairs = list(pairs)
        if dim_x is None or dim_y is None:
            if not pairs:
                raise ValueError("dimensions are required for an empty element")
            dim_x, dim_y = len(pairs[0][0]), len(pairs[0][1])
        xs = [p[0] for p in pairs]
        ys = [p[1] for p in pairs]
        return cls(dim_x, dim_y, xs, ys, riesz=riesz)

    @property
    def pairs(self):
        return list(zip(self.xs, self.ys))

    def __len__(self):
        return self.xs.shape[0]


@dataclass(frozen=True, eq=False)
class NuclearRep:
    """Representation ``T x = sum_k <x, zs[k]> ys[k]`` of an operator on ``C^dim``."""

    dim: int
    zs: np.ndarray = field(default=None)
    ys: np.ndarray = field(default=None)

    def __post_init__(self):
        zs = _vectors(self.zs if self.zs is not None else [], self.dim, "z")
        ys = _vectors(self.ys if self.ys is not None else [], self.dim, "y")
        if zs.shape[0] != ys.shape[0]:
            raise DimensionMismatchError(f"{zs.shape[0]} z-vectors but {ys.shape[0]} y-vectors")
        zs.setflags(write=False)
        ys.setflags(write=False)
        object.__setattr__(self, "zs", zs)
        object.__setattr__(self, "ys", ys)

    @property
    def terms(self):
        return list(zip(self.zs, self.ys))

    def __len__(self):
        return self.zs.shape[0]


@dataclass(frozen=True, eq=False)
class BilinearForm:
    """Bilinear map ``phi(x, y) = x^T M y``.

    ``coeffs`` has shape ``(dim_x, dim_y)`` for a scalar form, or
    ``(dim_x, dim_y, dim_z)`` for a form with values in ``C^dim_z``.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.ndim not in (2, 3) or c.size == 0:
            raise DimensionMismatchError(f"coeffs must be a nonempty 2-D or 3-D array, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coeffs contain NaN or infinite entries")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def dim_x(self):
        return self.coeffs.shape[0]

    @property
    def dim_y(self):
        return self.coeffs.shape[1]

    @property
    def scalar(self):
        return self.coeffs.ndim == 2

    def __call__(self, x, y):
        out = np.einsum("j,jk...,k->...", np.asarray(x), self.coeffs, np.asarray(y))
        return complex(out) if self.scalar else out


def single_tensor(x, y, riesz=False):
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    return TensorElement(x.size, y.size, x[None, :], y[None, :], riesz=riesz)


def _first_coords(f):
    return f.xs.conj() if f.riesz else f.xs


def coeff_matrix(f):
    """Coefficient matrix ``M[j, k] = sum_i x_i[j] y_i[k]``; independent of the representation."""
    if len(f) == 0:
        return np.zeros((f.dim_x, f.dim_y), dtype=np.complex128)
    return _first_coords(f).T @ f.ys


def projective_norm(f):
    """Projective crossnorm, computed exactly as the trace norm of the coefficient matrix."""
    m = coeff_matrix(f)
    return float(kernel.singular_values(m).sum())


def injective_norm(f):
    """Injective crossnorm: the largest singular value of the coefficient matrix."""
    return float(kernel.singular_values(coeff_matrix(f))[0])


def representation_cost(f):
    """``sum_i ||x_i|| ||y_i||`` for the pairs as stored."""
    return float(np.sum(np.linalg.norm(f.xs, axis=1) * np.linalg.norm(f.ys, axis=1)))


def pad_pairs(f, r):
    """Append zero pairs until ``f`` has ``r`` of them."""
    extra = r - len(f)
    if extra < 0:
        raise DimensionMismatchError(f"element already has {len(f)} > {r} pairs")
    xs = np.vstack([f.xs, np.zeros((extra, f.dim_x))])
    ys = np.vstack([f.ys, np.zeros((extra, f.dim_y))])
    return TensorElement(f.dim_x, f.dim_y, xs, ys, riesz=f.riesz)


def mix_representation(f, g, rcond=1e-12):
    """Rewrite ``f`` with new pairs ``x'_j = sum_k G[j,k] x_k``, ``y'_j = sum_k (G^-T)[j,k] y_k``.

    ``G`` must be square and invertible; if it is larger than the number of
    pairs, ``f`` is padded with zero pairs first.  The coefficient matrix is
    unchanged.
    """
    g = kernel.require_square(g)
    r = g.shape[0]
    if r < len(f):
        raise DimensionMismatchError(f"mixing matrix is {r}x{r} but element has {len(f)} pairs")
    f = pad_pairs(f, r)
    s = kernel.singular_values(g)
    if s[-1] <= rcond * s[0]:
        raise SingularMixError("mixing matrix is singular")
    ginv_t = np.linalg.inv(g).T
    xs = _first_coords(f)
    new_x = g @ xs
    if f.riesz:
        new_x = new_x.conj()
    return TensorElement(f.dim_x, f.dim_y, new_x, ginv_t @ f.ys, riesz=f.riesz)


def k_map(f):
    """Operator ``x -> sum_k f_k(x) y_k`` induced by an element of ``X* (x) Y``.

    With ``riesz=True`` the first factors are Riesz vectors and the result is
    ``sum_k y_k z_k^H``.  Otherwise they are dual-basis coordinates and the
    result is ``sum_k y_k f_k^T``.  Either way it is the transpose of the
    coefficient matrix, so its operator norm never exceeds the projective
    norm.
    """
    return coeff_matrix(f).T.copy()


def to_matrix(rep):
    """Assemble ``sum_k y_k z_k^H``."""
    if len(rep) == 0:
        return np.zeros((rep.dim, rep.dim), dtype=np.complex128)
    return rep.ys.T @ rep.zs.conj()


def nuclear_apply(rep, x):
    """Evaluate ``sum_k <x, z_k> y_k`` without assembling the matrix."""
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (rep.dim,):
        raise DimensionMismatchError(f"vector has shape {x.shape}, expected ({rep.dim},)")
    if len(rep) == 0:
        return np.zeros(rep.dim, dtype=np.complex128)
    return rep.ys.T @ (rep.zs.conj() @ x)


def rep_cost(rep):
    return float(np.sum(np.linalg.norm(rep.zs, axis=1) * np.linalg.norm(rep.ys, axis=1)))


def optimal_rep(t, rank_tol=None, method=None):
    """Cheapest nuclear representation, read off the SVD.

    Terms are ``(s_k v_k, u_k)`` for singular values above ``rank_tol * s_max``;
    the cost equals the trace norm.
    """
    t = kernel.require_square(t)
    u, s, v = kernel.svd(t, method=method)
    keep = kernel.support_mask(s, rank_tol)
    zs = (v[:, keep] * s[keep]).T
    ys = u[:, keep].T
    return NuclearRep(t.shape[0], zs, ys)


def adjoint_rep(rep):
    """Representation of ``T^H``: swap the roles of ``z_k`` and ``y_k``."""
    return NuclearRep(rep.dim, rep.ys, rep.zs)


def compose_rep(left, rep, right):
    """Representation of ``L T R`` with terms ``(R^H z_k, L y_k)``."""
    left = kernel.require_square(left)
    right = kernel.require_square(right)
    if left.shape[0] != rep.dim or right.shape[0] != rep.dim:
        raise DimensionMismatchError(
            f"L {left.shape} and R {right.shape} must match representation dim {rep.dim}"
        )
    if len(rep) == 0:
        return NuclearRep(rep.dim)
    return NuclearRep(rep.dim, rep.zs @ right.conj(), rep.ys @ left.T)


def concat_reps(a, b):
    """Representation of ``A + B`` obtained by listing the terms of both."""
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dims differ: {a.dim} vs {b.dim}")
    return NuclearRep(a.dim, np.vstack([a.zs, b.zs]), np.vstack([a.ys, b.ys]))


def nuclear_norm(t, method=None):
    """Infimum of :func:`rep_cost` over all representations of ``t``.

    On a Hilbert space this infimum is attained by :func:`optimal_rep`, so it
    coincides with the trace norm.
    """
    return rep_cost(optimal_rep(t, rank_tol=0.0, method=method))


def linearize(phi):
    """Linear functional on ``C^dim_x (x) C^dim_y`` induced by a bilinear form.

    It is returned as its coefficient array: ``Phi(F) = sum_jk M[j,k] C[j,k]``
    where ``C`` is the coefficient matrix of ``F``.
    """
    return phi.coeffs.copy()


def bilinearize(m):
    """Inverse of :func:`linearize`."""
    return BilinearForm(np.asarray(m))


def apply_linearized(lin, f):
    lin = np.asarray(lin)
    c = coeff_matrix(f)
    if lin.shape[:2] != c.shape:
        raise DimensionMismatchError(f"functional shape {lin.shape[:2]} vs element {c.shape}")
    out = np.einsum("jk...,jk->...", lin, c)
    return complex(out) if lin.ndim == 2 else out


def bilinear_norm(phi, restarts=20, iters=100, seed=0):
    """``sup |phi(x, y)|`` over unit ``x``, ``y``.

    Exact (largest singular value of the coefficients) for scalar forms.  For
    vector-valued forms this is a lower bound from alternating ascent: with
    ``y`` fixed the best ``x`` is the top right singular vector of
    ``x -> phi(x, y)``, and symmetrically.
    """
    c = phi.coeffs
    if phi.scalar:
        return float(kernel.singular_values(c)[0])
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(restarts):
        y = rng.standard_normal(phi.dim_y) + 1j * rng.standard_normal(phi.dim_y)
        y /= np.linalg.norm(y)
        val = 0.0
        for _ in range(iters):
            ax = np.einsum("jkz,k->zj", c, y)
            _, s, v = kernel.svd(ax)
            x = v[:, 0]
            ay = np.einsum("j,jkz->zk", x, c)
            _, s, v = kernel.svd(ay)
            y = v[:, 0]
            if s[0] - val <= 1e-15 * max(s[0], 1.0):
                val = s[0]
                break
            val = s[0]
        best = max(best, float(val))
    return best
