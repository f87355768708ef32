import numpy as np
import pytest

from conftest import symplectic_spectrum_oracle
from symhorn.errors import ConstraintError, DefinitenessError, DimensionError, DomainError
from symhorn.linalg_core import direct_sum_pair, is_positive_definite, is_symplectic
from symhorn.sampling import make_generator, random_pd, random_supermajorized_pair
from symhorn.schurhorn import (
    DIAGONAL_KINDS,
    ShearQuadruple,
    check_forward,
    check_symplectic_diagonal_bound,
    construct_arithmetic,
    construct_geometric,
    delta_c,
    delta_s,
    ds_of_symplectic_diagonal,
    shear_factor,
    squeeze_factor,
    symplectic_diagonal,
    verify_construction,
)
from symhorn.williamson import symplectic_eigenvalues

SQRT3 = np.sqrt(3.0)
A1 = np.array([[4.0, SQRT3], [SQRT3, 1.0]])


def test_delta_s_examples():
    np.testing.assert_array_equal(delta_s(np.eye(4)), [1, 1])
    np.testing.assert_array_equal(delta_s(direct_sum_pair([2.0, 5.0])), [2, 5])
    assert delta_s(A1)[0] == 2.0
    # equals d_s of the plain diagonal part
    np.testing.assert_allclose(symplectic_eigenvalues(np.diag(np.diag(A1))), delta_s(A1))


def test_delta_c_examples():
    np.testing.assert_array_equal(delta_c(np.eye(4)), [1, 1])
    assert delta_c(A1)[0] == 2.5


def test_symplectic_diagonal_examples():
    g = make_generator(1)
    A = random_pd(2, g)
    np.testing.assert_array_equal(symplectic_diagonal(A), A)
    D = np.diag([1.0, 2.0, 3.0, 4.0])
    np.testing.assert_array_equal(symplectic_diagonal(D), D)
    A = random_pd(6, g)
    A[:3, 3:] = 0
    A[3:, :3] = 0
    np.testing.assert_array_equal(symplectic_diagonal(A), np.diag(np.diag(A)))
    A = random_pd(6, g)
    S = symplectic_diagonal(A)
    np.testing.assert_array_equal(S, S.T)
    assert np.count_nonzero(S) <= 12


def test_ds_of_symplectic_diagonal_examples():
    np.testing.assert_array_equal(ds_of_symplectic_diagonal(np.eye(4)), [1, 1])
    np.testing.assert_allclose(ds_of_symplectic_diagonal(A1), [1.0], rtol=1e-15)
    np.testing.assert_allclose(symplectic_eigenvalues(A1), [1.0], rtol=1e-14)
    B = np.diag([4.0, 9.0, 1.0, 4.0])
    np.testing.assert_array_equal(ds_of_symplectic_diagonal(B), delta_s(B))
    with pytest.raises(DefinitenessError):
        ds_of_symplectic_diagonal([[1.0, 2.0], [2.0, 1.0]])


def test_ds_of_symplectic_diagonal_matches_spectrum_of_reduced_matrix():
    g = make_generator(2)
    for n in range(1, 6):
        A = random_pd(2 * n, g)
        np.testing.assert_allclose(
            np.sort(ds_of_symplectic_diagonal(A)),
            symplectic_spectrum_oracle(symplectic_diagonal(A)),
            rtol=1e-10,
        )


def test_forward_examples():
    D = direct_sum_pair([3.0, 1.0, 2.0])
    v = check_forward(D, "geometric")
    assert v.holds and v.lhs_partial_sum == pytest.approx(v.rhs_partial_sum)
    v = check_forward(A1, "geometric")
    assert v.holds and (v.lhs_partial_sum, v.rhs_partial_sum) == pytest.approx((2.0, 1.0))
    with pytest.raises(ValueError):
        check_forward(A1, "median")


def test_forward_relations_and_chain_on_random_matrices():
    g = make_generator(3)
    for k in range(300):
        n = 1 + k % 8
        A = random_pd(2 * n, g)
        ds = symplectic_eigenvalues(A)
        for kind in DIAGONAL_KINDS:
            assert check_forward(A, kind, spectrum=ds).holds, (k, kind)
        ok, margin = check_symplectic_diagonal_bound(A)
        assert ok and margin >= -1e-12
        lo, mid, hi = ds_of_symplectic_diagonal(A), delta_s(A), delta_c(A)
        assert np.all(lo <= mid * (1 + 1e-14)) and np.all(mid <= hi * (1 + 1e-14))
        a, b = np.diag(A)[:n], np.diag(A)[n:]
        np.testing.assert_allclose(mid**2, a * b, rtol=1e-14)


def test_symplectic_diagonal_bound_examples():
    ok, margin = check_symplectic_diagonal_bound(np.diag([4.0, 1.0, 9.0, 1.0]))
    assert ok and margin == 0.0
    ok, margin = check_symplectic_diagonal_bound(A1)
    assert ok and margin == pytest.approx(1.0)


@pytest.mark.parametrize("c, q", [(1.0, 0.0), (2.0, SQRT3), (10.0, np.sqrt(99.0))])
def test_shear_factor(c, q):
    p, q_, r, s = shear_factor(c)
    assert (p, r, s) == (1.0, 0.0, 1.0)
    assert q_ == pytest.approx(q, rel=1e-15)
    assert p * s - q_ * r == 1.0
    assert np.sqrt((p * p + q_ * q_) * (r * r + s * s)) == pytest.approx(c, rel=1e-15)


def test_shear_and_squeeze_domain():
    with pytest.raises(DomainError):
        shear_factor(0.5)
    with pytest.raises(DomainError):
        squeeze_factor(0.99)
    b = squeeze_factor(2.0)
    assert b == pytest.approx(2 + SQRT3)
    assert 0.5 * (b + 1 / b) == pytest.approx(2.0, rel=1e-15)


def test_shear_quadruple_is_symplectic():
    quads = [shear_factor(c) for c in (1.0, 1.5, 7.0)]
    sq = ShearQuadruple(*(np.array(col) for col in zip(*quads)))
    np.testing.assert_allclose(sq.determinants(), 1.0, atol=1e-14)
    assert is_symplectic(sq.matrix(), 1e-12)[0]


def test_construct_geometric_closed_form():
    r = construct_geometric([2.0], [1.0])
    np.testing.assert_allclose(r.A, A1, atol=1e-12)
    assert np.sqrt(np.linalg.det(r.A)) == pytest.approx(1.0, rel=1e-12)
    np.testing.assert_array_equal(r.intermediate_z, [1.0])


def test_construct_geometric_horn_block():
    r = construct_geometric([2.0, 2.0], [1.0, 3.0])
    T = np.array([[2.0, 1.0], [1.0, 2.0]])
    expected = np.block([[T, np.zeros((2, 2))], [np.zeros((2, 2)), T]])
    np.testing.assert_allclose(r.A, expected, atol=1e-14)
    np.testing.assert_allclose(delta_s(r.A), [2, 2])
    np.testing.assert_allclose(symplectic_spectrum_oracle(r.A), [1, 3], rtol=1e-12)


def test_construct_identity_case():
    y = np.array([3.0, 1.0, 2.0])
    for build in (construct_geometric, construct_arithmetic):
        r = build(np.sort(y), y)
        np.testing.assert_allclose(r.A, direct_sum_pair(np.sort(y)), atol=1e-14)


def test_construct_arithmetic_closed_form():
    r = construct_arithmetic([2.0], [1.0])
    beta = 2.0 + SQRT3
    np.testing.assert_allclose(r.A, np.diag([beta, 1 / beta]), rtol=1e-12, atol=1e-15)
    assert delta_c(r.A)[0] == pytest.approx(2.0, rel=1e-14)
    r = construct_arithmetic([2.0, 2.0], [1.0, 3.0])
    np.testing.assert_allclose(delta_c(r.A), [2.0, 2.0], rtol=1e-14)


def test_constructions_reject_infeasible_pairs():
    for build in (construct_geometric, construct_arithmetic):
        with pytest.raises(ConstraintError) as info:
            build([0.5], [1.0])
        assert info.value.index == 1
        with pytest.raises(DimensionError):
            build([1.0, 2.0], [1.0])


def test_constructions_round_trip_and_forward_relations():
    g = make_generator(4)
    for k in range(200):
        x, y = random_supermajorized_pair(1 + k % 8, g)
        for build, diag in ((construct_geometric, delta_s), (construct_arithmetic, delta_c)):
            r = build(x, y)
            assert r.spectrum_residual <= 1e-7 and r.diagonal_residual <= 1e-7
            assert is_positive_definite(r.A)
            np.testing.assert_allclose(diag(r.A), x, rtol=1e-7)
            np.testing.assert_allclose(symplectic_spectrum_oracle(r.A), np.sort(y), rtol=1e-7)
            for kind in DIAGONAL_KINDS:
                assert check_forward(r.A, kind).holds
            assert check_symplectic_diagonal_bound(r.A)[0]


def test_constructions_deterministic():
    x, y = [3.0, 0.7, 2.2, 5.0], [1.0, 2.0, 0.5, 4.0]
    for build in (construct_geometric, construct_arithmetic):
        a, b = build(x, y), build(x, y)
        assert a.A.tobytes() == b.A.tobytes()


def test_verify_construction():
    r = construct_geometric([3.0, 1.5], [1.0, 2.0])
    again = verify_construction(r.A, [3.0, 1.5], [1.0, 2.0], "geometric")
    assert again.ok(1e-7)

    rep = verify_construction(np.eye(2), [2.0], [1.0], "geometric")
    assert rep.diagonal_residual == 1.0 and rep.spectrum_residual == 0.0

    A = r.A + 1e-3 * np.eye(4)
    before = A.copy()
    rep = verify_construction(A, [3.0, 1.5], [1.0, 2.0], "geometric")
    assert rep.spectrum_residual > 0 and rep.diagonal_residual > 0
    np.testing.assert_array_equal(A, before)

    with pytest.raises(DimensionError):
        verify_construction(np.eye(4), [1.0], [1.0, 1.0])
