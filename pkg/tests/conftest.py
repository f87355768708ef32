import itertools

import numpy as np
import pytest
from scipy.optimize import linprog


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def hull_feasible_below(x, y):
    """Oracle: is there a convex combination z of permutations of y with z <= x?

    Solved as a linear feasibility problem over the permutation weights; it
    never looks at sorted partial sums.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    perms = np.array([y[list(p)] for p in itertools.permutations(range(y.size))])
    k = perms.shape[0]
    res = linprog(
        np.zeros(k),
        A_ub=perms.T,
        b_ub=x,
        A_eq=np.ones((1, k)),
        b_eq=[1.0],
        bounds=[(0, None)] * k,
        method="highs",
    )
    return res.status == 0


def random_convex_permutation_mix(y, rng, terms=4):
    """A point of the permutohedron of y (hence majorised by y) by construction."""
    w = rng.dirichlet(np.ones(terms))
    return sum(wi * rng.permutation(y) for wi in w)


def symplectic_spectrum_oracle(A):
    """Moduli of the eigenvalues of J A via LAPACK's general eigensolver."""
    n = A.shape[0] // 2
    J = np.block([[np.zeros((n, n)), np.eye(n)], [-np.eye(n), np.zeros((n, n))]])
    ev = np.linalg.eigvals(J @ A)
    return np.sort(np.abs(ev.imag))[::2]
