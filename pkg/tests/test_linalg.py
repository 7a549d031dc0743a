"""
Dense linear algebra kernels testing.
"""

# Copyright (C) 2026 ifbs developers
import numpy as np

from ifbs._lib.linalg import check_index_set
from ifbs._lib.linalg import largest_gram_eigenvalue
from ifbs._lib.linalg import matvec
from ifbs._lib.linalg import smallest_nonzero_restricted_eigenvalue
from ifbs._lib.linalg import smallest_restricted_eigenvalue
from ifbs.exceptions import ConvergenceError
from pytest import approx, raises


def test_matvec_identity():
    assert np.array_equal(matvec(np.eye(2), [3, -1]), [3, -1])


def test_matvec_hand_arithmetic():
    assert np.array_equal(matvec([[1, 2], [0, 1]], [1, 1]), [3, 1])


def test_matvec_zero_matrix():
    assert np.array_equal(matvec(np.zeros((2, 3)), [1, 1, 1]), [0, 0])


def test_matvec_dimension_mismatch():
    with raises(ValueError):
        matvec(np.eye(2), [1, 2, 3])


def test_matvec_linearity():
    rng = np.random.default_rng(0)
    A = rng.standard_normal((5, 4))
    u, v = rng.standard_normal(4), rng.standard_normal(4)

    assert matvec(A, 2.0 * u - 3.0 * v) == approx(
        2.0 * matvec(A, u) - 3.0 * matvec(A, v), abs=1e-12)


def test_largest_gram_eigenvalue_identity():
    assert largest_gram_eigenvalue(np.eye(3)) == approx(1, rel=1e-12)


def test_largest_gram_eigenvalue_diagonal():
    assert largest_gram_eigenvalue(np.diag([2.0, 1.0])) == approx(4,
                                                                  rel=1e-9)


def test_largest_gram_eigenvalue_zero_matrix():
    with raises(ValueError):
        largest_gram_eigenvalue(np.zeros((2, 2)))


def test_largest_gram_eigenvalue_null_space_start():
    # the start vector ones/sqrt(n) lies in the null space of A
    assert largest_gram_eigenvalue([[1.0, -1.0]]) == approx(2, rel=1e-9)


def _orthogonal_start_matrix():
    # eigenvalues of A^T A are 3, 1 and 0; the top eigenvector
    # (1, -1, 0)/sqrt(2) is orthogonal to the all-ones vector
    u = np.array([1.0, -1.0, 0.0]) / np.sqrt(2)
    w = np.ones(3) / np.sqrt(3)
    return np.vstack([np.sqrt(3) * u, w])


def test_largest_gram_eigenvalue_orthogonal_start():
    A = _orthogonal_start_matrix()
    expected = np.linalg.eigvalsh(A.T @ A)[-1]

    assert expected == approx(3)
    assert largest_gram_eigenvalue(A) == approx(expected, rel=1e-9)


def test_largest_gram_eigenvalue_seed():
    A = _orthogonal_start_matrix()

    for seed in (1, 7, 123):
        assert largest_gram_eigenvalue(A, random_state=seed) == approx(
            3, rel=1e-9)


def test_largest_gram_eigenvalue_max_iter():
    with raises(ConvergenceError) as excinfo:
        largest_gram_eigenvalue(np.diag([2.0, 1.0]), max_iter=2)

    assert excinfo.value.best is not None


def test_largest_gram_eigenvalue_random():
    rng = np.random.default_rng(42)

    for size in (3, 8, 20):
        A = rng.standard_normal((size, size))
        expected = np.linalg.eigvalsh(A.T @ A)[-1]
        assert largest_gram_eigenvalue(A) == approx(expected, rel=1e-6)


def test_smallest_restricted_eigenvalue_orthonormal():
    assert smallest_restricted_eigenvalue(np.eye(3), [0, 2]) == approx(1)


def test_smallest_restricted_eigenvalue_diagonal():
    A = np.diag([2.0, 1.0])
    assert smallest_restricted_eigenvalue(A, [0, 1]) == approx(1)


def test_smallest_restricted_eigenvalue_empty():
    with raises(ValueError):
        smallest_restricted_eigenvalue(np.eye(3), [])


def test_smallest_restricted_eigenvalue_cap():
    with raises(ValueError):
        smallest_restricted_eigenvalue(np.eye(3), [0, 1], max_size=1)


def test_smallest_restricted_eigenvalue_bounded_by_largest():
    rng = np.random.default_rng(1)
    A = rng.standard_normal((10, 6))

    l_E = smallest_restricted_eigenvalue(A, [1, 3, 4])
    assert 0 <= l_E <= largest_gram_eigenvalue(A) * (1 + 1e-9)


def test_smallest_nonzero_restricted_eigenvalue_zero_map():
    A = np.zeros((2, 2))
    assert smallest_nonzero_restricted_eigenvalue(A, [0, 1]) == 0


def test_smallest_nonzero_restricted_eigenvalue_rank_one():
    A = np.array([[1.0, 1.0]])

    assert smallest_restricted_eigenvalue(A, [0, 1]) == approx(0, abs=1e-12)
    assert smallest_nonzero_restricted_eigenvalue(A, [0, 1]) == approx(2)


def test_smallest_nonzero_restricted_eigenvalue_orthonormal():
    assert smallest_nonzero_restricted_eigenvalue(np.eye(4), [1, 2]) == (
        approx(1))


def test_check_index_set_repeated():
    with raises(ValueError):
        check_index_set([0, 0], 3)


def test_check_index_set_out_of_range():
    with raises(ValueError):
        check_index_set([0, 3], 3)
