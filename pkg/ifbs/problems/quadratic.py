"""
Convex quadratic smooth term.
"""

# Copyright (C) 2026 ifbs developers

import numpy as np

from scipy import linalg

from .._lib.linalg import check_matrix
from .._lib.linalg import check_vector
from .base import SmoothOracle


class Quadratic(SmoothOracle):
    r"""
    Convex quadratic :math:`f(x) = \frac{1}{2} x^T Q x - c^T x`.

    Parameters
    ----------
    Q : array-like, shape = (n, n)
        Symmetric positive semidefinite matrix.

    c : array-like, shape = (n,) or None (default=None)
        Linear term. If None, zero.
    """
    def __init__(self, Q, c=None):
        Q = check_matrix(Q, "Q")

        if Q.shape[0] != Q.shape[1]:
            raise ValueError("Q must be square; got shape {}."
                             .format(Q.shape))

        if not np.allclose(Q, Q.T):
            raise ValueError("Q must be symmetric.")

        n = Q.shape[0]
        c = np.zeros(n) if c is None else check_vector(c, "c", n)

        eigenvalues = linalg.eigvalsh(Q)
        if eigenvalues[0] < -1e-12 * max(1.0, abs(eigenvalues[-1])):
            raise ValueError("Q must be positive semidefinite; smallest "
                             "eigenvalue is {}.".format(eigenvalues[0]))

        if eigenvalues[-1] <= 0:
            raise ValueError("Q must be nonzero.")

        self._Q = Q
        self._c = c
        self._lipschitz_constant = float(eigenvalues[-1])

    @property
    def dimension(self):
        return self._Q.shape[0]

    @property
    def lipschitz_constant(self):
        return self._lipschitz_constant

    def value(self, x):
        return 0.5 * float(x @ (self._Q @ x)) - float(self._c @ x)

    def gradient(self, x):
        return self._Q @ x - self._c
