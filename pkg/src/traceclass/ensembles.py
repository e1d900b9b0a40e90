"""Seeded random-matrix ensembles.

Every draw takes an explicit ``numpy.random.Generator``.  Use
:func:`trial_rng` to get the per-trial stream the verifier uses, so any
single trial can be replayed in isolation.
"""

import zlib

import numpy as np

__all__ = [
    "trial_rng",
    "ginibre",
    "ginibre_vector",
    "unit_vector",
    "haar_unitary",
    "random_psd",
    "random_low_rank",
    "random_contraction",
]


def trial_rng(seed, property_id, dim, trial):
    """Generator for one ``(property, dim, trial)`` cell.

    The stream depends only on its own coordinates, so running a subset of
    properties reproduces the same draws.
    """
    tag = zlib.crc32(property_id.encode("utf-8"))
    return np.random.default_rng(np.random.SeedSequence([int(seed) & (2**64 - 1), tag, int(dim), int(trial)]))


def ginibre(rng, rows, cols=None, size=None):
    """Matrix with i.i.d. standard complex normal entries (``E|z|^2 = 1``)."""
    cols = rows if cols is None else cols
    shape = (rows, cols) if size is None else (size, rows, cols)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def ginibre_vector(rng, n, size=None):
    shape = (n,) if size is None else (size, n)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def unit_vector(rng, n, size=None):
    v = ginibre_vector(rng, n, size=size)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def haar_unitary(rng, n, size=None):
    """Haar-distributed unitary: QR of a Ginibre matrix with the phases of ``diag(R)`` removed."""
    z = ginibre(rng, n, size=size)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    ph = d / np.where(np.abs(d) == 0, 1.0, np.abs(d))
    return q * ph[..., None, :]


def random_psd(rng, n):
    g = ginibre(rng, n)
    return g.conj().T @ g


def random_low_rank(rng, n, rank):
    return ginibre(rng, n, rank) @ ginibre(rng, rank, n)


def random_contraction(rng, n, size=None):
    """Ginibre matrix scaled to operator norm ``u ** (1/n^2)`` with ``u`` uniform on (0, 1].

    The radial factor spreads samples through the unit ball rather than only
    its boundary.
    """
    g = ginibre(rng, n, size=size)
    norms = np.linalg.norm(g, ord=2, axis=(-2, -1))
    radius = (1.0 - rng.random(np.shape(norms))) ** (1.0 / (n * n))
    return g * (radius / norms)[..., None, None]
