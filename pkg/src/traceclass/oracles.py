"""Independent reference computations used to cross-check the main routes.

Nothing here calls the SVD/eigen back end in :mod:`traceclass.kernel`.
"""

import numpy as np

from .ensembles import haar_unitary

__all__ = ["charpoly", "charpoly_roots", "random_mixes", "mixed_costs"]


def charpoly(a):
    """Coefficients of ``det(lambda I - A)``, highest power first (Faddeev-LeVerrier)."""
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[0] = 1.0
    m = np.zeros_like(a)
    eye = np.eye(n)
    for k in range(1, n + 1):
        m = a @ m + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(a @ m) / k
    return coeffs


def charpoly_roots(a):
    """Eigenvalues as roots of the characteristic polynomial (companion-matrix route)."""
    c = charpoly(a)
    if c.size == 2:
        return np.array([-c[1]])
    return np.roots(c)


def random_mixes(rng, r, size):
    """Stack of well-conditioned invertible mixing matrices ``G = Q diag(d)`` and their inverses.

    ``Q`` is Haar unitary and ``d`` lies in ``[e^-1, e]``, so the condition
    number never exceeds ``e^2``.
    """
    q = haar_unitary(rng, r, size=size)
    d = np.exp(rng.uniform(-1.0, 1.0, size=(size, r)))
    g = q * d[:, None, :]
    ginv = (q.conj().transpose(0, 2, 1)) / d[:, :, None]
    return g, ginv


def mixed_costs(xs, ys, g, ginv):
    """Representation costs after mixing coordinates ``xs`` and ``ys`` by each ``G`` in a stack.

    ``xs`` and ``ys`` hold ``r`` rows each (pad with zero rows beforehand).
    New first factors are ``G @ xs`` and new second factors ``G^-T @ ys``.
    """
    new_x = g @ xs
    new_y = np.swapaxes(ginv, -1, -2) @ ys
    return np.sum(np.linalg.norm(new_x, axis=-1) * np.linalg.norm(new_y, axis=-1), axis=-1)
