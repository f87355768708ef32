"""Diagonals of positive definite matrices versus their symplectic spectrum.

Three notions of "diagonal" of a ``2n x 2n`` matrix ``A`` split into
``n x n`` blocks ``[[A11, A12], [A21, A22]]`` are compared with the
symplectic spectrum ``d_s(A)``:

* ``delta_s``: entrywise geometric mean of ``diag(A11)`` and ``diag(A22)``;
* ``delta_c``: their arithmetic mean;
* ``ds_of_symplectic_diagonal``: the symplectic spectrum of the matrix that
  keeps only the diagonals of the four blocks.

Each is weakly supermajorised by ``d_s(A)``. Conversely, for positive
``x ≺^w y`` the constructors below return a matrix with symplectic spectrum
``y`` whose geometric (or arithmetic) mean diagonal is ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DefinitenessError, DimensionError, DomainError, NumericalError
from .horn import construct_with_spectrum_and_diagonal
from .linalg_core import check_symmetric, half_dimension, is_positive_definite
from .vecmaj import (
    as_positive_vector,
    is_weakly_supermajorized,
    waterfill_intermediate,
)
from .williamson import symplectic_eigenvalues

__all__ = [
    "ShearQuadruple",
    "ConstructionReport",
    "DIAGONAL_KINDS",
    "delta_s",
    "delta_c",
    "symplectic_diagonal",
    "ds_of_symplectic_diagonal",
    "check_forward",
    "check_symplectic_diagonal_bound",
    "shear_factor",
    "squeeze_factor",
    "construct_geometric",
    "construct_arithmetic",
    "verify_construction",
]

DIAGONAL_KINDS = ("geometric", "arithmetic", "symplectic_diag")
CONSTRUCTION_TOL = 1e-7


@dataclass(frozen=True)
class ShearQuadruple:
    """Diagonals ``p, q, r, s`` of the blocks of ``M = [[P, Q], [R, S]]``.

    ``p_j s_j - q_j r_j = 1`` for every ``j``, which makes ``M`` symplectic.
    """

    p: np.ndarray
    q: np.ndarray
    r: np.ndarray
    s: np.ndarray

    def matrix(self):
        return np.block(
            [[np.diag(self.p), np.diag(self.q)], [np.diag(self.r), np.diag(self.s)]]
        )

    def determinants(self):
        return self.p * self.s - self.q * self.r


@dataclass(frozen=True)
class ConstructionReport:
    """A matrix together with what was measured on it.

    Residuals are the largest entrywise relative deviations
    ``|achieved - target| / min(|achieved|, |target|)``; the spectrum is
    compared after sorting both sides ascending.
    """

    A: np.ndarray
    achieved_spectrum: np.ndarray
    achieved_diagonal: np.ndarray
    spectrum_residual: float
    diagonal_residual: float
    intermediate_z: np.ndarray | None
    mean: str

    def ok(self, tol=CONSTRUCTION_TOL):
        return self.spectrum_residual <= tol and self.diagonal_residual <= tol


def _half_diagonals(A):
    n = half_dimension(A)
    diag = np.diag(np.asarray(A, dtype=float))
    return diag[:n], diag[n:]


def delta_s(A):
    """Entrywise ``sqrt(A[j, j] * A[n+j, n+j])``."""
    a, b = _half_diagonals(A)
    return np.sqrt(a * b)


def delta_c(A):
    """Entrywise ``(A[j, j] + A[n+j, n+j]) / 2``."""
    a, b = _half_diagonals(A)
    return 0.5 * (a + b)


def symplectic_diagonal(A):
    """Keep only the diagonals of the four ``n x n`` blocks of ``A``.

    The upper-right diagonal is used for both off-diagonal blocks, so the
    result is symmetric.
    """
    n = half_dimension(A)
    A = np.asarray(A, dtype=float)
    idx = np.arange(n)
    out = np.zeros_like(A)
    out[idx, idx] = A[idx, idx]
    out[n + idx, n + idx] = A[n + idx, n + idx]
    out[idx, n + idx] = A[idx, n + idx]
    out[n + idx, idx] = A[idx, n + idx]
    return out


def ds_of_symplectic_diagonal(A):
    """Symplectic spectrum of :func:`symplectic_diagonal`, in the original coordinate order.

    The matrix decouples into ``2 x 2`` blocks ``[[alpha, beta], [beta, gamma]]``,
    so entry ``j`` is ``sqrt(alpha_j gamma_j - beta_j^2)``.
    """
    n = half_dimension(A)
    A = np.asarray(A, dtype=float)
    idx = np.arange(n)
    alpha = A[idx, idx]
    gamma = A[n + idx, n + idx]
    beta = A[idx, n + idx]
    rad = alpha * gamma - beta * beta
    if np.any(rad <= 0) or np.any(alpha <= 0):
        raise DefinitenessError("a 2x2 coupling block is not positive definite")
    return np.sqrt(rad)


_DIAGONALS = {
    "geometric": delta_s,
    "arithmetic": delta_c,
    "symplectic_diag": ds_of_symplectic_diagonal,
}


def check_forward(A, which="geometric", spectrum=None):
    """Test that the chosen diagonal of ``A`` is weakly supermajorised by ``d_s(A)``.

    ``which`` is one of ``"geometric"``, ``"arithmetic"`` or
    ``"symplectic_diag"``. The slack is ``1e-9 * sum(d_s(A))``. A precomputed
    ``spectrum`` may be passed to avoid recomputing ``d_s(A)``.
    """
    if which not in _DIAGONALS:
        raise ValueError(f"unknown diagonal kind {which!r}; expected one of {DIAGONAL_KINDS}")
    A = check_symmetric(A)
    ds = symplectic_eigenvalues(A) if spectrum is None else np.asarray(spectrum, dtype=float)
    return is_weakly_supermajorized(_DIAGONALS[which](A), ds, 1e-9 * float(np.sum(ds)))


def check_symplectic_diagonal_bound(A, slack=1e-12):
    """Entrywise ``ds_of_symplectic_diagonal(A) <= delta_s(A)``.

    Returns ``(holds, margin)`` where ``margin = min_j (delta_s - ds_diag)_j``;
    the bound holds when ``margin >= -slack``.
    """
    margin = float(np.min(delta_s(A) - ds_of_symplectic_diagonal(A)))
    return margin >= -slack, margin


def shear_factor(c):
    """An element ``(p, q, r, s)`` of SL(2, R) with ``sqrt((p^2+q^2)(r^2+s^2)) = c``.

    The shear ``(1, sqrt(c^2 - 1), 0, 1)`` is used; ``c`` must be at least 1.
    """
    if not c >= 1.0:
        raise DomainError(f"shear factor requires c >= 1, got {c!r}")
    return 1.0, float(np.sqrt(c * c - 1.0)), 0.0, 1.0


def squeeze_factor(c):
    """The ``beta >= 1`` with ``(beta + 1/beta) / 2 = c``."""
    if not c >= 1.0:
        raise DomainError(f"squeeze factor requires c >= 1, got {c!r}")
    return float(c + np.sqrt(c * c - 1.0))


def _rel_dev(achieved, target):
    achieved = np.asarray(achieved, dtype=float)
    target = np.asarray(target, dtype=float)
    denom = np.minimum(np.abs(achieved), np.abs(target))
    dev = np.abs(achieved - target)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(dev == 0, 0.0, dev / denom)
    return float(np.max(rel))


def _intermediate(x, y):
    """Steps shared by both constructions: ``z``, the Horn matrix, ``B = T ⊕ T``."""
    x = as_positive_vector(x, "x")
    y = as_positive_vector(y, "y")
    if x.shape != y.shape:
        raise DimensionError(f"length mismatch: {x.size} vs {y.size}")
    z = waterfill_intermediate(x, y)
    horn = construct_with_spectrum_and_diagonal(y, z)
    n = y.size
    # (Omega ⊕ Omega)(Y ⊕ Y)(Omega ⊕ Omega)^T is block diagonal with T twice
    B = np.zeros((2 * n, 2 * n))
    B[:n, :n] = horn.T
    B[n:, n:] = horn.T
    z_diag = np.diag(horn.T).copy()
    ratio = np.maximum(x / z_diag, 1.0)
    return x, y, z, B, ratio


def _finish(A, x, y, z, mean, tol):
    A = 0.5 * (A + A.T)
    report = verify_construction(A, x, y, mean, intermediate_z=z)
    if not is_positive_definite(A) or not report.ok(tol):
        raise NumericalError(
            f"constructed matrix failed verification (spectrum {report.spectrum_residual:.3g}, "
            f"diagonal {report.diagonal_residual:.3g})",
            details=report,
        )
    return report


def construct_geometric(x, y, tol=CONSTRUCTION_TOL):
    """Positive definite ``A`` with ``d_s(A) = sort(y)`` and ``delta_s(A) = x``.

    Parameters
    ----------
    x, y : array_like
        Positive vectors with ``x ≺^w y``.

    Returns
    -------
    ConstructionReport
        The matrix and its measured residuals (both at most ``tol``).

    Raises
    ------
    ConstraintError
        If ``x`` is not weakly supermajorised by ``y``.
    NumericalError
        If the result fails verification; ``details`` is the report.
    """
    x, y, z, B, ratio = _intermediate(x, y)
    quads = [shear_factor(c) for c in ratio]
    shear = ShearQuadruple(*(np.array(col) for col in zip(*quads)))
    M = shear.matrix()
    return _finish(M @ B @ M.T, x, y, z, "geometric", tol)


def construct_arithmetic(x, y, tol=CONSTRUCTION_TOL):
    """Positive definite ``A`` with ``d_s(A) = sort(y)`` and ``delta_c(A) = x``.

    The congruence ``diag(a, 1/a) B diag(a, 1/a)`` scales the two
    half-diagonals by ``a^2`` and ``a^-2``, so ``a_j = sqrt(beta_j)`` with
    ``(beta_j + 1/beta_j) / 2 = x_j / z_j``.
    """
    x, y, z, B, ratio = _intermediate(x, y)
    beta = np.array([squeeze_factor(c) for c in ratio])
    scale = np.sqrt(np.concatenate([beta, 1.0 / beta]))
    A = scale[:, None] * B * scale[None, :]
    return _finish(A, x, y, z, "arithmetic", tol)


def verify_construction(A, x, y, mean="geometric", intermediate_z=None):
    """Measure how far ``A`` is from having spectrum ``y`` and mean diagonal ``x``.

    ``mean`` selects ``delta_s`` (``"geometric"``) or ``delta_c``
    (``"arithmetic"``). Never raises on a mismatch; only on bad shapes or a
    matrix that is not positive definite.
    """
    if mean not in ("geometric", "arithmetic"):
        raise ValueError(f"mean must be 'geometric' or 'arithmetic', got {mean!r}")
    A = check_symmetric(A)
    n = half_dimension(A)
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    if x.size != n or y.size != n:
        raise DimensionError(f"expected vectors of length {n}, got {x.size} and {y.size}")
    ds = symplectic_eigenvalues(A)
    diag = delta_s(A) if mean == "geometric" else delta_c(A)
    return ConstructionReport(
        A=A.copy(),
        achieved_spectrum=ds,
        achieved_diagonal=diag,
        spectrum_residual=_rel_dev(ds, np.sort(y)),
        diagonal_residual=_rel_dev(diag, x),
        intermediate_z=None if intermediate_z is None else np.asarray(intermediate_z),
        mean=mean,
    )

