"""Symplectic eigenvalues and Williamson normal form of positive definite matrices.

For a real positive definite ``A`` of size ``2n`` the matrix
``W = A^{1/2} J A^{1/2}`` is skew-symmetric with eigenvalues ``±i d_j``.
We never form complex numbers: ``-W^2`` is symmetric positive definite with
each ``d_j^2`` appearing twice, so the symmetric eigensolver is enough.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalError, SymmetryError
from .linalg_core import (
    check_symmetric,
    direct_sum_pair,
    half_dimension,
    inv_sqrt_pd,
    sqrt_pd,
    standard_symplectic_form,
    symmetric_eigendecomposition,
)

__all__ = [
    "SkewCanonicalForm",
    "WilliamsonDecomposition",
    "ConditionWarning",
    "symplectic_eigenvalues",
    "skew_canonical_form",
    "williamson_decomposition",
    "cluster_eigenvalues",
]

CLUSTER_GAP = 1e-8
DECOMP_TOL = 1e-8
CONDITION_LIMIT = 1e8


class ConditionWarning(UserWarning):
    """The symplectic spectrum spans more than ``CONDITION_LIMIT``."""


@dataclass(frozen=True)
class SkewCanonicalForm:
    """Orthogonal ``Q`` with ``Q^T W Q = [[0, diag(mu)], [-diag(mu), 0]]``."""

    Q: np.ndarray
    mu: np.ndarray


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """Symplectic ``M`` with ``M^T A M = diag(d) ⊕ diag(d)``, ``d`` ascending."""

    M: np.ndarray
    d: np.ndarray
    form_residual: float
    symplectic_residual: float
    warning: str | None = field(default=None)


def cluster_eigenvalues(lam, gap=CLUSTER_GAP):
    """Group ascending eigenvalues into runs separated by a relative gap.

    Two neighbours belong to the same cluster when they differ by at most
    ``gap * lam[k+1]`` plus a rounding floor proportional to the largest
    eigenvalue. Returns a list of index arrays.
    """
    lam = np.asarray(lam, dtype=float)
    if lam.size == 0:
        return []
    floor = 64 * np.finfo(float).eps * max(abs(lam[-1]), abs(lam[0]))
    clusters = [[0]]
    for k in range(1, lam.size):
        if lam[k] - lam[k - 1] <= gap * abs(lam[k]) + floor:
            clusters[-1].append(k)
        else:
            clusters.append([k])
    return [np.array(c, dtype=np.intp) for c in clusters]


def _paired_roots(lam):
    """Square roots of the doubled eigenvalues of ``-W^2``, ascending."""
    out = []
    for idx in cluster_eigenvalues(lam):
        if idx.size % 2:
            raise NumericalError(
                "eigenvalues of -W^2 do not pair up (odd cluster)",
                details={"cluster": lam[idx]},
            )
        vals = lam[idx]
        out.extend(0.5 * (vals[0::2] + vals[1::2]))
    out = np.asarray(out)
    if np.any(out <= 0):
        raise NumericalError("non-positive eigenvalue of -W^2", details={"eigenvalues": lam})
    return np.sqrt(out)


def symplectic_eigenvalues(A):
    """Symplectic spectrum ``d_1 <= ... <= d_n`` of a ``2n x 2n`` positive definite matrix.

    Raises ``DefinitenessError`` if ``A`` is not positive definite and
    ``NumericalError`` if the spectrum of ``-W^2`` fails to pair up.
    """
    n = half_dimension(A)
    A = check_symmetric(A)
    R = sqrt_pd(A)
    J = standard_symplectic_form(n)
    # -W^2 = R J^T A J R; J^T A J is an exact signed permutation of A
    N = R @ (J.T @ A @ J) @ R
    N = 0.5 * (N + N.T)
    _, lam = symmetric_eigendecomposition(N)
    return _paired_roots(lam)


def _complement(basis, vectors, drop):
    """Orthonormal basis of span(basis) minus ``vectors``, dropping one column.

    ``drop`` is the column index of ``basis`` removed before projecting, chosen
    so the projected columns remain well conditioned.
    """
    keep = np.delete(basis, drop, axis=1)
    for _ in range(2):
        for v in vectors:
            keep = keep - np.outer(v, v @ keep)
    cols = []
    for j in range(keep.shape[1]):
        w = keep[:, j]
        for _ in range(2):
            for c in cols:
                w = w - (c @ w) * c
        nrm = np.linalg.norm(w)
        if nrm < 1e-6:
            raise NumericalError("lost rank while orthogonalising inside a cluster")
        cols.append(w / nrm)
    if not cols:
        return np.zeros((basis.shape[0], 0))
    return np.column_stack(cols)


def skew_canonical_form(W):
    """Real normal form of a nonsingular skew-symmetric matrix.

    Returns ``SkewCanonicalForm(Q, mu)`` with ``Q`` orthogonal and ``mu > 0``
    in descending order such that ``Q^T W Q = [[0, diag(mu)], [-diag(mu), 0]]``.
    Columns are ``[u_1 .. u_n | v_1 .. v_n]`` with ``v_j = -W u_j / mu_j``.
    """
    W = np.asarray(W, dtype=float)
    n = half_dimension(W)
    wnorm = np.linalg.norm(W)
    if wnorm == 0 or np.linalg.norm(W + W.T) > 1e-10 * wnorm:
        raise SymmetryError("W must be a nonzero skew-symmetric matrix")
    N = W.T @ W
    N = 0.5 * (N + N.T)
    E, lam = symmetric_eigendecomposition(N)
    if lam[0] <= 0:
        raise NumericalError("W is singular to working precision", details={"eigenvalues": lam})
    us, vs, mus = [], [], []
    for idx in reversed(cluster_eigenvalues(lam)):
        if idx.size % 2:
            raise NumericalError("odd-dimensional eigenspace of -W^2", details={"cluster": lam[idx]})
        basis = E[:, idx]
        while basis.shape[1]:
            u = basis[:, 0]
            wu = W @ u
            mu = np.linalg.norm(wu)
            v = -wu / mu
            if u @ W @ v < 0:
                v = -v
            rest = basis[:, 1:]
            drop = int(np.argmax(np.abs(v @ rest)))
            basis = _complement(rest, (u, v), drop)
            us.append(u)
            vs.append(v)
            mus.append(mu)
    Q = np.column_stack(us + vs)
    mu = np.asarray(mus)
    canon = np.zeros_like(W)
    canon[:n, n:] = np.diag(mu)
    canon[n:, :n] = -np.diag(mu)
    form_res = np.linalg.norm(Q.T @ W @ Q - canon)
    orth_res = np.linalg.norm(Q.T @ Q - np.eye(2 * n))
    if form_res > 1e-9 * wnorm or orth_res > 1e-10 * n:
        raise NumericalError(
            "skew canonical form failed its residual check",
            details={"form_residual": form_res, "orthogonality_residual": orth_res},
        )
    return SkewCanonicalForm(Q, mu)


def williamson_decomposition(A):
    """Williamson normal form of a ``2n x 2n`` positive definite matrix.

    Returns
    -------
    WilliamsonDecomposition
        ``M`` symplectic and ``d`` ascending with ``M^T A M = diag(d) ⊕ diag(d)``.
        Both residuals are measured and attached.

    Raises
    ------
    DefinitenessError
        If ``A`` is not positive definite.
    NumericalError
        If either residual exceeds its bound; ``details`` holds the residuals.

    Notes
    -----
    With ``W' = A^{-1/2} J A^{-1/2}`` and its canonical form ``(Q, mu)`` we have
    ``d = 1/mu`` and ``M = A^{-1/2} Q (D ⊕ D)^{1/2}``.
    """
    n = half_dimension(A)
    A = check_symmetric(A)
    J = standard_symplectic_form(n)
    S = inv_sqrt_pd(A)
    Wp = S @ J @ S
    Wp = 0.5 * (Wp - Wp.T)
    canon = skew_canonical_form(Wp)
    d = 1.0 / canon.mu
    order = np.argsort(d, kind="stable")
    d = d[order]
    Q = canon.Q[:, np.concatenate([order, n + order])]
    root = np.sqrt(np.concatenate([d, d]))
    M = (S @ Q) * root
    form_res = float(np.linalg.norm(M.T @ A @ M - direct_sum_pair(d)))
    symp_res = float(np.linalg.norm(M.T @ J @ M - J))
    details = {"form_residual": form_res, "symplectic_residual": symp_res, "M": M, "d": d}
    if form_res > DECOMP_TOL * np.linalg.norm(A):
        raise NumericalError("M^T A M differs from D ⊕ D beyond tolerance", details=details)
    if symp_res > DECOMP_TOL * (1.0 + np.linalg.norm(M) ** 2):
        raise NumericalError("M is not symplectic within tolerance", details=details)
    note = None
    if d[-1] / d[0] > CONDITION_LIMIT:
        note = f"symplectic spectrum spread {d[-1] / d[0]:.3g} exceeds {CONDITION_LIMIT:.0e}"
        warnings.warn(note, ConditionWarning, stacklevel=2)
    return WilliamsonDecomposition(M, d, form_res, symp_res, note)
