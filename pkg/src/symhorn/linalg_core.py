"""Dense real matrix primitives.

Matrices are plain ``numpy.ndarray`` objects of dtype float64. The symmetric
eigensolver is a cyclic Jacobi method; rotations within one round of the
round-robin ordering act on disjoint index pairs, so each round is applied
as a single vectorised update.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import DefinitenessError, DimensionError, NumericalError, SymmetryError

__all__ = [
    "BlockPartition",
    "SYMPLECTIC_TOL",
    "standard_symplectic_form",
    "symmetric_eigendecomposition",
    "sqrt_pd",
    "inv_sqrt_pd",
    "is_positive_definite",
    "is_symplectic",
    "block_partition",
    "block_assemble",
    "direct_sum_pair",
    "check_symmetric",
    "half_dimension",
]

SYMPLECTIC_TOL = 1e-10
JACOBI_TOL = 1e-14
DENSE_ROUND_LIMIT = 48


class BlockPartition(NamedTuple):
    A11: np.ndarray
    A12: np.ndarray
    A21: np.ndarray
    A22: np.ndarray


def _square(A):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {A.shape}")
    return A


def half_dimension(A):
    """Return ``n`` for a ``2n x 2n`` matrix, raising on odd or non-square shapes."""
    A = _square(A)
    if A.shape[0] == 0 or A.shape[0] % 2:
        raise DimensionError(f"expected an even, non-zero dimension, got {A.shape[0]}")
    return A.shape[0] // 2


def check_symmetric(S, name="matrix"):
    """Return ``S`` as a float array, raising if it is not symmetric to 1e-12 relative."""
    S = _square(S)
    scale = 1.0 + (np.max(np.abs(S)) if S.size else 0.0)
    if S.size and np.max(np.abs(S - S.T)) > 1e-12 * scale:
        raise SymmetryError(f"{name} is not symmetric")
    return S


def standard_symplectic_form(n):
    """The ``2n x 2n`` matrix ``[[0, I], [-I, 0]]``."""
    if n < 1:
        raise DimensionError("n must be at least 1")
    J = np.zeros((2 * n, 2 * n))
    idx = np.arange(n)
    J[idx, n + idx] = 1.0
    J[n + idx, idx] = -1.0
    return J


@lru_cache(maxsize=None)
def _round_robin(m):
    """Disjoint index pairs covering every (p, q), p < q, once per sweep."""
    size = m + (m % 2)
    players = list(range(size))
    rounds = []
    for _ in range(size - 1):
        ps, qs = [], []
        for i in range(size // 2):
            a, b = players[i], players[size - 1 - i]
            if a < m and b < m:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return tuple(rounds)


def _rotate_columns(X, P, Q, c, s):
    colp = X[:, P].copy()
    colq = X[:, Q]
    X[:, P] = c * colp - s * colq
    X[:, Q] = s * colp + c * colq


def _off_norm(A):
    return np.linalg.norm(A - np.diag(np.diag(A)))


def symmetric_eigendecomposition(S, tol=JACOBI_TOL, max_sweeps=None):
    """Eigen-decompose a real symmetric matrix by cyclic Jacobi sweeps.

    Parameters
    ----------
    S : array_like, shape (n, n)
        Symmetric matrix (checked to 1e-12 relative).
    tol : float
        Stop when the Frobenius norm of the off-diagonal part is at most
        ``tol * ||S||_F``.
    max_sweeps : int, optional
        Sweep budget; defaults to ``30 * n**2``.

    Returns
    -------
    Q : ndarray, shape (n, n)
        Orthogonal matrix of eigenvectors (columns).
    lam : ndarray, shape (n,)
        Eigenvalues in ascending order, ``S = Q diag(lam) Q^T``.

    Raises
    ------
    NumericalError
        If the sweep budget is exhausted before convergence.
    """
    A = check_symmetric(S).copy()
    A = 0.5 * (A + A.T)
    m = A.shape[0]
    V = np.eye(m)
    norm = np.linalg.norm(A)
    if max_sweeps is None:
        max_sweeps = 30 * m * m
    if m > 1 and norm > 0:
        rounds = _round_robin(m)
        # one dense product per round beats fancy indexing for small m
        dense = m <= DENSE_ROUND_LIMIT
        for _ in range(max_sweeps):
            if _off_norm(A) <= tol * norm:
                break
            for P, Q in rounds:
                apq = A[P, Q]
                active = apq != 0.0
                if not active.any():
                    continue
                safe = np.where(active, apq, 1.0)
                # a subnormal apq sends tau to inf, which correctly gives t = 0
                with np.errstate(over="ignore"):
                    tau = (A[Q, Q] - A[P, P]) / (2.0 * safe)
                t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
                t = np.where(active, t, 0.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                if dense:
                    G = np.eye(m)
                    G[P, P] = c
                    G[P, Q] = s
                    G[Q, P] = -s
                    G[Q, Q] = c
                    A = G.T @ A @ G
                    V = V @ G
                else:
                    _rotate_columns(A, P, Q, c, s)
                    _rotate_columns(A.T, P, Q, c, s)
                    _rotate_columns(V, P, Q, c, s)
                A[P, Q] = 0.0
                A[Q, P] = 0.0
        else:
            if _off_norm(A) > tol * norm:
                raise NumericalError(
                    f"Jacobi iteration did not converge in {max_sweeps} sweeps",
                    details={"off_norm": _off_norm(A), "norm": norm},
                )
    lam = np.diag(A).copy()
    order = np.argsort(lam, kind="stable")
    return V[:, order], lam[order]


def _pd_spectral(A):
    A = check_symmetric(A)
    Q, lam = symmetric_eigendecomposition(A)
    if lam.size and lam[0] <= 0:
        raise DefinitenessError(f"matrix is not positive definite (smallest eigenvalue {lam[0]!r})")
    return Q, lam


def _from_spectrum(Q, values):
    R = (Q * values) @ Q.T
    return 0.5 * (R + R.T)


def sqrt_pd(A):
    """Unique symmetric positive definite square root of ``A``."""
    Q, lam = _pd_spectral(A)
    return _from_spectrum(Q, np.sqrt(lam))


def inv_sqrt_pd(A):
    """Inverse of the positive definite square root, ``A^{-1/2}``."""
    Q, lam = _pd_spectral(A)
    return _from_spectrum(Q, 1.0 / np.sqrt(lam))


def is_positive_definite(S):
    """True iff ``S`` is symmetric and its Cholesky factorisation succeeds."""
    try:
        S = check_symmetric(S)
        np.linalg.cholesky(S)
    except (np.linalg.LinAlgError, SymmetryError, DimensionError):
        return False
    return True


def is_symplectic(M, tol=SYMPLECTIC_TOL):
    """Check ``M^T J M = J``.

    Returns ``(ok, residual)`` with ``residual = ||M^T J M - J||_F`` and
    ``ok`` true iff ``residual <= tol * (1 + ||M||_F^2)``.
    """
    n = half_dimension(M)
    M = np.asarray(M, dtype=float)
    J = standard_symplectic_form(n)
    residual = float(np.linalg.norm(M.T @ J @ M - J))
    return residual <= tol * (1.0 + np.linalg.norm(M) ** 2), residual


def block_partition(A):
    """Split a ``2n x 2n`` matrix into its four ``n x n`` blocks (copies)."""
    n = half_dimension(A)
    A = np.asarray(A, dtype=float)
    return BlockPartition(
        A[:n, :n].copy(), A[:n, n:].copy(), A[n:, :n].copy(), A[n:, n:].copy()
    )


def block_assemble(blocks):
    A11, A12, A21, A22 = (np.asarray(b, dtype=float) for b in blocks)
    if not (A11.shape == A12.shape == A21.shape == A22.shape) or A11.ndim != 2:
        raise DimensionError("blocks must all have the same square shape")
    if A11.shape[0] != A11.shape[1]:
        raise DimensionError("blocks must be square")
    return np.block([[A11, A12], [A21, A22]])


def direct_sum_pair(d):
    """``diag(d) ⊕ diag(d)`` as a ``2n x 2n`` matrix."""
    d = np.asarray(d, dtype=float).reshape(-1)
    if d.size == 0:
        raise DimensionError("d must have at least one entry")
    return np.diag(np.concatenate([d, d]))
