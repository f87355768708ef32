"""Majorisation predicates on real vectors and the water-filling level construction.

All predicates compare partial sums of sorted copies of the inputs. They
accept an explicit ``slack`` so that callers working in floating point can
absorb rounding at the equality boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstraintError, DimensionError, DomainError

__all__ = [
    "MajorisationVerdict",
    "as_positive_vector",
    "sort_descending",
    "sort_ascending",
    "is_weakly_submajorized",
    "is_weakly_supermajorized",
    "is_majorized",
    "waterfill_intermediate",
    "is_in_sigma",
    "default_slack",
]


@dataclass(frozen=True)
class MajorisationVerdict:
    """Outcome of a majorisation test.

    When the relation fails, ``first_violation_index`` is the smallest
    1-based ``k`` whose partial-sum inequality is violated and the two sums
    are the ones compared there. When it holds the index is ``None`` and the
    sums are the totals (``k = n``).
    """

    holds: bool
    first_violation_index: int | None
    lhs_partial_sum: float
    rhs_partial_sum: float

    def __bool__(self):
        return self.holds


def as_positive_vector(v, name="vector"):
    """Return ``v`` as a 1-D float array after checking every entry is > 0."""
    arr = np.asarray(v, dtype=float).reshape(-1)
    if arr.size == 0:
        raise DimensionError(f"{name} must have at least one entry")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} has non-finite entries")
    if np.any(arr <= 0):
        raise DomainError(f"{name} must have strictly positive entries")
    return arr


def _pair(x, y):
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    if x.shape != y.shape:
        raise DimensionError(f"length mismatch: {x.size} vs {y.size}")
    if x.size == 0:
        raise DimensionError("vectors must have at least one entry")
    return x, y


def _check_slack(slack):
    if slack < 0:
        raise DomainError("slack must be non-negative")


def sort_descending(x):
    """Entries of ``x`` in non-increasing order; ties keep their original order."""
    x = np.asarray(x, dtype=float).reshape(-1)
    return x[np.argsort(-x, kind="stable")]


def sort_ascending(x):
    x = np.asarray(x, dtype=float).reshape(-1)
    return x[np.argsort(x, kind="stable")]


def default_slack(y):
    """Rounding allowance used by higher layers: ``1e-12 * max(1, sum|y|)``."""
    return 1e-12 * max(1.0, float(np.sum(np.abs(y))))


def _first_failure(lhs, rhs, fails):
    bad = np.flatnonzero(fails)
    if bad.size:
        k = int(bad[0])
        return MajorisationVerdict(False, k + 1, float(lhs[k]), float(rhs[k]))
    return MajorisationVerdict(True, None, float(lhs[-1]), float(rhs[-1]))


def is_weakly_submajorized(x, y, slack=0.0):
    """Test ``x ≺_w y``: every top-k partial sum of x is at most that of y."""
    x, y = _pair(x, y)
    _check_slack(slack)
    lhs = np.cumsum(sort_descending(x))
    rhs = np.cumsum(sort_descending(y))
    return _first_failure(lhs, rhs, lhs > rhs + slack)


def is_weakly_supermajorized(x, y, slack=0.0):
    """Test ``x ≺^w y``: every bottom-k partial sum of x is at least that of y."""
    x, y = _pair(x, y)
    _check_slack(slack)
    lhs = np.cumsum(sort_ascending(x))
    rhs = np.cumsum(sort_ascending(y))
    return _first_failure(lhs, rhs, lhs < rhs - slack)


def is_majorized(x, y, slack=0.0):
    """Test ``x ≺ y``: weak submajorisation plus equal totals (within ``slack``)."""
    verdict = is_weakly_submajorized(x, y, slack)
    if not verdict.holds:
        return verdict
    x, y = _pair(x, y)
    sx, sy = float(np.sum(x)), float(np.sum(y))
    if abs(sx - sy) > slack:
        return MajorisationVerdict(False, x.size, sx, sy)
    return verdict


def waterfill_intermediate(x, y):
    """Clamp ``x`` at a common level so that the result is majorised by ``y``.

    Returns ``z`` with ``z_i = min(x_i, t)`` where the level ``t`` solves
    ``sum_i min(x_i, t) = sum(y)``. Requires ``x ≺^w y``; then ``z <= x``
    entrywise (in the original coordinate order) and ``z ≺ y``.

    Raises
    ------
    ConstraintError
        If ``x`` is not weakly supermajorised by ``y``.
    """
    x = as_positive_vector(x, "x")
    y = as_positive_vector(y, "y")
    _pair(x, y)
    verdict = is_weakly_supermajorized(x, y, default_slack(y))
    if not verdict.holds:
        raise ConstraintError(
            f"x is not weakly supermajorised by y (fails at k={verdict.first_violation_index}: "
            f"{verdict.lhs_partial_sum!r} < {verdict.rhs_partial_sum!r})",
            index=verdict.first_violation_index,
        )
    n = x.size
    target = math.fsum(y)
    if math.fsum(x) <= target:
        # equal totals (the slack admitted the rest): nothing to clamp
        return x.copy()
    xs = sort_ascending(x)
    prefix = np.concatenate(([0.0], np.cumsum(xs)))
    # m smallest entries stay, the other n - m are clamped to t
    level = None
    for m in range(n):
        t = (target - prefix[m]) / (n - m)
        lower = xs[m - 1] if m > 0 else -np.inf
        if lower <= t <= xs[m]:
            level = t
            break
    if level is None:
        # rounding pushed t just past the largest entry; nothing is clamped
        level = target - prefix[n - 1]
    return np.minimum(x, level)


def is_in_sigma(x, y):
    """Membership of ``x`` in the unbounded convex set ``{x : x ≺^w y}``."""
    x = as_positive_vector(x, "x")
    y = as_positive_vector(y, "y")
    return is_weakly_supermajorized(x, y, default_slack(y)).holds
