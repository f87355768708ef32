"""Seeded random generators for the matrices and vectors the toolkit works with.

Every function takes a ``numpy.random.Generator`` (PCG64 via
:func:`make_generator`) and consumes draws in a fixed order, so a given seed
reproduces the same output.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, DomainError
from .linalg_core import direct_sum_pair
from .vecmaj import as_positive_vector

__all__ = [
    "make_generator",
    "random_orthogonal",
    "random_orthosymplectic",
    "random_symplectic",
    "random_pd_with_symplectic_spectrum",
    "random_pd",
    "random_majorized_below",
    "random_supermajorized_pair",
]


def make_generator(seed=None):
    """A PCG64 ``Generator``; passes an existing generator through unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def random_orthogonal(n, g):
    """Haar-distributed ``n x n`` orthogonal matrix (QR of a Gaussian, sign-fixed)."""
    if n < 1:
        raise DimensionError("n must be at least 1")
    Z = g.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    signs = np.where(np.diag(R) < 0, -1.0, 1.0)
    return Q * signs


def random_orthosymplectic(n, g):
    """Orthogonal symplectic ``[[X, Y], [-Y, X]]``.

    Built as ``(O ⊕ O) R(theta)`` where ``R(theta)`` rotates each
    ``(j, n + j)`` coordinate plane by an independent angle.
    """
    O = random_orthogonal(n, g)
    theta = g.uniform(0.0, 2.0 * np.pi, size=n)
    c, s = np.cos(theta), np.sin(theta)
    R = np.block([[np.diag(c), np.diag(s)], [-np.diag(s), np.diag(c)]])
    OO = np.zeros((2 * n, 2 * n))
    OO[:n, :n] = O
    OO[n:, n:] = O
    return OO @ R


def random_symplectic(n, spread, g):
    """Random element ``K1 Z K2`` of Sp(2n).

    ``K1`` and ``K2`` are orthogonal symplectic and ``Z`` is the squeeze
    ``diag(e^r, e^-r)`` with each ``r_j`` uniform on ``[-spread, spread]``.
    """
    if spread < 0:
        raise DomainError("spread must be non-negative")
    K1 = random_orthosymplectic(n, g)
    r = g.uniform(-spread, spread, size=n)
    K2 = random_orthosymplectic(n, g)
    Z = np.concatenate([np.exp(r), np.exp(-r)])
    return (K1 * Z) @ K2


def random_pd_with_symplectic_spectrum(d, spread, g):
    """``S (diag(d) ⊕ diag(d)) S^T`` for a random symplectic ``S``."""
    d = as_positive_vector(d, "d")
    S = random_symplectic(d.size, spread, g)
    A = S @ direct_sum_pair(d) @ S.T
    return 0.5 * (A + A.T)


def random_pd(n2, g):
    """``G G^T`` plus ``1e-3`` times its mean eigenvalue on the diagonal."""
    if n2 < 2 or n2 % 2:
        raise DimensionError("n2 must be an even integer >= 2")
    G = g.standard_normal((n2, n2))
    A = G @ G.T
    A += 1e-3 * (np.trace(A) / n2) * np.eye(n2)
    return 0.5 * (A + A.T)


def random_majorized_below(y, g, transfers=None):
    """A random vector majorised by ``y``.

    Starts from a random permutation of ``y`` and applies Robin Hood
    transfers: a random fraction of half the gap between two coordinates
    moves from the larger to the smaller, which keeps the sum and the
    majorisation order. ``transfers`` defaults to a random count in
    ``[0, 3n]``.
    """
    y = as_positive_vector(y, "y")
    n = y.size
    z = g.permutation(y)
    if transfers is None:
        transfers = int(g.integers(0, 3 * n + 1))
    if n < 2:
        return z
    for _ in range(transfers):
        i, j = g.choice(n, size=2, replace=False)
        frac = g.uniform()
        hi, lo = (i, j) if z[i] >= z[j] else (j, i)
        delta = frac * 0.5 * (z[hi] - z[lo])
        z[hi] -= delta
        z[lo] += delta
    return z


def random_supermajorized_pair(n, g, log_range=2.0, noise_prob=0.5, noise_scale=1.0):
    """A pair ``(x, y)`` with ``x ≺^w y``.

    ``y`` has entries ``exp(U[-log_range/2, log_range/2])``, ``x`` is a vector
    majorised by ``y`` plus non-negative noise on a random subset of coordinates.
    """
    y = np.exp(g.uniform(-0.5 * log_range, 0.5 * log_range, size=n))
    x = random_majorized_below(y, g)
    mask = g.uniform(size=n) < noise_prob
    noise = g.exponential(noise_scale * float(np.mean(y)), size=n)
    return x + mask * noise, y
