"""
Dense real vector/matrix kernels and spectral estimates.
"""

# Copyright (C) 2026 ifbs developers

import logging
import numbers

import numpy as np

from scipy import linalg

from ..exceptions import ConvergenceError


logger = logging.getLogger(__name__)


def check_vector(x, name="x", size=None):
    """
    Check and convert a real vector.

    Parameters
    ----------
    x : array-like, shape = (n,)
        Vector to be checked.

    name : str (default="x")
        Name used in error messages.

    size : int or None (default=None)
        Required length. None skips the length check.

    Returns
    -------
    x : numpy.ndarray, shape = (n,)
        Vector as float64 array.
    """
    x = np.asarray(x, dtype=float)

    if x.ndim != 1:
        raise ValueError("{} must be a one-dimensional array; got ndim={}."
                         .format(name, x.ndim))

    if x.size == 0:
        raise ValueError("{} must have positive length.".format(name))

    if size is not None and x.size != size:
        raise ValueError("{} must have length {}; got {}."
                         .format(name, size, x.size))

    if not np.all(np.isfinite(x)):
        raise ValueError("{} must contain finite entries only.".format(name))

    return x


def check_matrix(A, name="A"):
    """
    Check and convert a dense real matrix.

    Parameters
    ----------
    A : array-like, shape = (m, n)
        Matrix to be checked.

    name : str (default="A")
        Name used in error messages.

    Returns
    -------
    A : numpy.ndarray, shape = (m, n)
        Matrix as float64 array.
    """
    A = np.asarray(A, dtype=float)

    if A.ndim != 2:
        raise ValueError("{} must be a two-dimensional array; got ndim={}."
                         .format(name, A.ndim))

    if A.shape[0] == 0 or A.shape[1] == 0:
        raise ValueError("{} must have positive dimensions; got shape={}."
                         .format(name, A.shape))

    if not np.all(np.isfinite(A)):
        raise ValueError("{} must contain finite entries only.".format(name))

    return A


def check_index_set(S, n, max_size=None):
    """
    Check an index set over {0, ..., n-1}.

    Parameters
    ----------
    S : array-like of int
        Indices.

    n : int
        Size of the ground set.

    max_size : int or None (default=None)
        Maximum allowed cardinality.

    Returns
    -------
    S : numpy.ndarray of int
        Sorted unique indices.
    """
    S = np.asarray(S, dtype=int).ravel()

    if S.size == 0:
        raise ValueError("Index set must be nonempty.")

    if np.unique(S).size != S.size:
        raise ValueError("Index set must not contain repeated indices.")

    if S.min() < 0 or S.max() >= n:
        raise ValueError("Indices must lie in [0, {}]; got range [{}, {}]."
                         .format(n - 1, S.min(), S.max()))

    if max_size is not None and S.size > max_size:
        raise ValueError("Index set of size {} exceeds the dense eigensolve "
                         "cap max_size={}.".format(S.size, max_size))

    return np.sort(S)


def matvec(A, v):
    """
    Matrix-vector product.

    Parameters
    ----------
    A : array-like, shape = (m, n)

    v : array-like, shape = (n,)

    Returns
    -------
    Av : numpy.ndarray, shape = (m,)
    """
    A = check_matrix(A)
    v = check_vector(v, "v", A.shape[1])

    return A @ v


def largest_gram_eigenvalue(A, tol=1e-10, max_iter=10000, random_state=0):
    r"""
    Largest eigenvalue of :math:`A^T A` by power iteration.

    The iteration :math:`v \mapsto A^T(Av)/\|A^T(Av)\|` runs from the
    normalized all-ones vector and from a seeded random unit vector; the
    larger Rayleigh quotient is returned. A start in the null space of
    :math:`A`, or orthogonal to the top eigenvector, only affects its own
    run.

    Parameters
    ----------
    A : array-like, shape = (m, n)
        Nonzero matrix.

    tol : float (default=1e-10)
        Relative tolerance on successive Rayleigh quotients.

    max_iter : int (default=10000)
        Maximum number of iterations.

    random_state : int or None (default=0)
        Seed of the random start vector.

    Returns
    -------
    eigenvalue : float
    """
    A = check_matrix(A)

    if not isinstance(tol, numbers.Number) or tol <= 0:
        raise ValueError("tol must be positive; got {}.".format(tol))

    if not isinstance(max_iter, numbers.Integral) or max_iter <= 0:
        raise ValueError("max_iter must be a positive integer; got {}."
                         .format(max_iter))

    if not np.any(A):
        raise ValueError("A must be nonzero.")

    n = A.shape[1]
    rng = np.random.default_rng(random_state)
    v_random = rng.standard_normal(n)

    # the all-ones start may be orthogonal to the top eigenvector
    starts = (np.full(n, 1.0 / np.sqrt(n)),
              v_random / np.linalg.norm(v_random))
    results = [_power_iteration(A, v, tol, max_iter) for v in starts]

    eigenvalue = max(result[0] for result in results)
    change = max(result[1] for result in results)

    if not all(result[2] for result in results):
        raise ConvergenceError("power iteration did not converge in {} "
                               "iterations; relative change={:.3e}."
                               .format(max_iter, change), best=eigenvalue,
                               value=change)

    if results[1][0] > results[0][0] * (1 + np.sqrt(tol)):
        logger.debug("power iteration from the all-ones start stalled at "
                     "%.6g; seeded random start gives %.6g.", results[0][0],
                     results[1][0])

    return eigenvalue


def _power_iteration(A, v, tol, max_iter):
    eigenvalue = 0.0
    change = np.inf
    for _ in range(max_iter):
        w = A.T @ (A @ v)
        w_norm = np.linalg.norm(w)

        if w_norm == 0:
            # start vector in the null space of A
            return 0.0, 0.0, True

        new_eigenvalue = float(v @ w)
        v = w / w_norm

        change = abs(new_eigenvalue - eigenvalue) / new_eigenvalue
        eigenvalue = new_eigenvalue

        if change <= tol:
            return eigenvalue, change, True

    return eigenvalue, change, False


def _restricted_gram_eigenvalues(A, S, max_size):
    A = check_matrix(A)
    S = check_index_set(S, A.shape[1], max_size)

    A_S = A[:, S]
    return linalg.eigvalsh(A_S.T @ A_S)


def smallest_restricted_eigenvalue(A, S, max_size=2000):
    r"""
    Smallest eigenvalue of :math:`A_S^T A_S`.

    Parameters
    ----------
    A : array-like, shape = (m, n)

    S : array-like of int
        Column indices (0-based).

    max_size : int (default=2000)
        Maximum :math:`|S|` handled by the dense symmetric eigensolver.

    Returns
    -------
    eigenvalue : float
        Nonnegative smallest eigenvalue.
    """
    eigenvalues = _restricted_gram_eigenvalues(A, S, max_size)
    return max(0.0, float(eigenvalues[0]))


def smallest_nonzero_restricted_eigenvalue(A, S, zero_tol=1e-10,
                                           max_size=2000):
    r"""
    Smallest eigenvalue of :math:`A_S^T A_S` strictly above ``zero_tol``.

    Parameters
    ----------
    A : array-like, shape = (m, n)

    S : array-like of int
        Column indices (0-based).

    zero_tol : float (default=1e-10)
        Eigenvalues below or equal to this value are treated as zero.

    max_size : int (default=2000)
        Maximum :math:`|S|` handled by the dense symmetric eigensolver.

    Returns
    -------
    eigenvalue : float
        0 if every eigenvalue is treated as zero.
    """
    if zero_tol <= 0:
        raise ValueError("zero_tol must be positive; got {}."
                         .format(zero_tol))

    eigenvalues = _restricted_gram_eigenvalues(A, S, max_size)
    nonzero = eigenvalues[eigenvalues > zero_tol]

    if nonzero.size:
        return float(nonzero[0])

    return 0.0
