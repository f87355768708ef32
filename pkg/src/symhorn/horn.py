"""Real symmetric matrices with prescribed spectrum and diagonal.

Given ``z ≺ y`` we start from ``diag(y)`` and fix one diagonal entry at a
time with a plane rotation (Chan and Li's scheme). The largest remaining
target ``d`` is bracketed by two neighbouring working eigenvalues
``lam_j <= d <= lam_i``; rotating that pair by ``cos^2 = (d - lam_j) / (lam_i - lam_j)``
puts ``d`` on the diagonal and leaves ``lam_i + lam_j - d`` behind. The
rotated coordinate is retired and the rest stays diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstraintError, DimensionError, NumericalError
from .linalg_core import check_symmetric, symmetric_eigendecomposition
from .vecmaj import default_slack, is_majorized

__all__ = ["HornResult", "construct_with_spectrum_and_diagonal", "schur_check"]


@dataclass(frozen=True)
class HornResult:
    """``T = Omega diag(y) Omega^T`` with ``diag(T) = z``."""

    T: np.ndarray
    Omega: np.ndarray


def _rotate(X, a, b, c, s):
    """Apply ``G X G^T`` for the rotation acting on coordinates ``a`` and ``b``.

    ``G[a, a] = G[b, b] = c``, ``G[a, b] = -s``, ``G[b, a] = s``.
    """
    ra = X[a].copy()
    rb = X[b].copy()
    X[a] = c * ra - s * rb
    X[b] = s * ra + c * rb


def construct_with_spectrum_and_diagonal(y, z):
    """Build a symmetric ``T`` with eigenvalues ``y`` and diagonal ``z``.

    Parameters
    ----------
    y : array_like, shape (n,)
        Target eigenvalues (any real numbers).
    z : array_like, shape (n,)
        Target diagonal; must satisfy ``z ≺ y`` within ``1e-12 * max(1, sum|y|)``.

    Returns
    -------
    HornResult
        ``T`` and an orthogonal ``Omega`` with ``T = Omega diag(y) Omega^T``.

    Raises
    ------
    ConstraintError
        If ``z`` is not majorised by ``y``.
    NumericalError
        If rounding has pushed a target outside every bracket.
    """
    y = np.asarray(y, dtype=float).reshape(-1)
    z = np.asarray(z, dtype=float).reshape(-1)
    if y.shape != z.shape or y.size == 0:
        raise DimensionError(f"y and z must be non-empty with equal lengths ({y.size} vs {z.size})")
    slack = default_slack(y)
    verdict = is_majorized(z, y, slack)
    if not verdict.holds:
        raise ConstraintError(
            f"z is not majorised by y (fails at k={verdict.first_violation_index})",
            index=verdict.first_violation_index,
        )
    n = y.size
    tol = 4 * n * slack
    exact = 16 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(y))))

    y_order = np.argsort(-y, kind="stable")
    T = np.diag(y[y_order])
    Omega = np.eye(n)[y_order]  # Omega diag(y) Omega^T == T

    z_order = np.argsort(-z, kind="stable")
    active = list(range(n))
    assigned = np.empty(n, dtype=np.intp)  # assigned[k]: coordinate carrying z[z_order[k]]
    for k, target_idx in enumerate(z_order):
        d = z[target_idx]
        vals = np.array([T[i, i] for i in active])
        gaps = np.abs(vals - d)
        nearest = int(np.argmin(gaps))
        if gaps[nearest] <= exact:
            coord = active[nearest]
        else:
            coord = _bracket_and_rotate(T, Omega, active, vals, d, tol)
            if coord is None and gaps[nearest] <= tol:
                coord = active[nearest]
            elif coord is None:
                raise NumericalError(
                    f"no working eigenvalue pair brackets target {d!r}",
                    details={"working": vals, "target": d},
                )
        assigned[k] = coord
        active.remove(coord)

    perm = np.empty(n, dtype=np.intp)
    perm[z_order] = assigned
    T = T[np.ix_(perm, perm)]
    Omega = Omega[perm]
    return HornResult(0.5 * (T + T.T), Omega)


def _bracket_and_rotate(T, Omega, active, vals, d, tol):
    order = np.argsort(-vals, kind="stable")
    best = None
    for i, j in zip(order[:-1], order[1:]):
        hi, lo = vals[i], vals[j]
        if lo - tol <= d <= hi + tol and hi > lo:
            if best is None or hi - lo < best[2]:
                best = (i, j, hi - lo)
    if best is None:
        return None
    i, j, width = best
    a, b = active[i], active[j]
    cos2 = min(max((d - vals[j]) / width, 0.0), 1.0)
    c = np.sqrt(cos2)
    s = np.sqrt(1.0 - cos2)
    # similarity on both sides keeps T symmetric; Omega collects the rotations
    _rotate(T, a, b, c, s)
    _rotate(T.T, a, b, c, s)
    _rotate(Omega, a, b, c, s)
    return a


def schur_check(T, slack=None):
    """Majorisation of the diagonal of ``T`` by its eigenvalues."""
    T = check_symmetric(T)
    _, lam = symmetric_eigendecomposition(T)
    if slack is None:
        slack = 1e-9 * max(1.0, float(np.sum(np.abs(lam))))
    return is_majorized(np.diag(T), lam, slack)

