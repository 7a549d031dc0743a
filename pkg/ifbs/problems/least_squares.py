"""
l1-regularized least squares problem.
"""

# Copyright (C) 2026 ifbs developers

import hashlib
import numbers

import numpy as np

from .._lib.linalg import check_matrix
from .._lib.linalg import check_vector
from .._lib.linalg import largest_gram_eigenvalue
from .base import CompositeProblem
from .base import SmoothOracle


def _readonly(array):
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


class LeastSquares(SmoothOracle):
    r"""
    Least squares term :math:`f(x) = \frac{1}{2}\|b - Ax\|^2`.

    The gradient is :math:`A^T(Ax - b)` and its Lipschitz constant is the
    largest eigenvalue of :math:`A^T A`, computed once by power iteration
    and cached.

    Parameters
    ----------
    A : array-like, shape = (m, n)
        Design matrix.

    b : array-like, shape = (m,)
        Observations.

    lipschitz_constant : float or None (default=None)
        Known Lipschitz constant. If None, it is estimated.

    tol : float (default=1e-10)
        Relative tolerance of the power iteration.
    """
    def __init__(self, A, b, lipschitz_constant=None, tol=1e-10):
        A = check_matrix(A)
        b = check_vector(b, "b", A.shape[0])

        self._A = _readonly(A)
        self._b = _readonly(b)

        if lipschitz_constant is None:
            lipschitz_constant = largest_gram_eigenvalue(self._A, tol=tol)
        elif lipschitz_constant <= 0:
            raise ValueError("lipschitz_constant must be positive; got {}."
                             .format(lipschitz_constant))

        self._lipschitz_constant = float(lipschitz_constant)

    @property
    def A(self):
        """Design matrix."""
        return self._A

    @property
    def b(self):
        """Observations."""
        return self._b

    @property
    def dimension(self):
        return self._A.shape[1]

    @property
    def lipschitz_constant(self):
        return self._lipschitz_constant

    def residual(self, x):
        """Residual Ax - b."""
        return self._A @ x - self._b

    def value(self, x):
        r = self.residual(x)
        return 0.5 * float(r @ r)

    def gradient(self, x):
        return self._A.T @ self.residual(x)


class L1LSInstance(CompositeProblem):
    r"""
    l1-regularized least squares instance
    :math:`\frac{1}{2}\|b-Ax\|^2 + \rho\|x\|_1`.

    Parameters
    ----------
    A : array-like, shape = (m, n)
        Design matrix.

    b : array-like, shape = (m,)
        Observations.

    rho : float (default=1.0)
        Weight of the :math:`\ell_1` term.

    lipschitz_constant : float or None (default=None)
        Known Lipschitz constant. If None, it is estimated by power iteration.
    """
    def __init__(self, A, b, rho=1.0, lipschitz_constant=None):
        super().__init__(LeastSquares(A, b, lipschitz_constant), rho)

    @property
    def A(self):
        """Design matrix."""
        return self._smooth.A

    @property
    def b(self):
        """Observations."""
        return self._smooth.b

    @property
    def shape(self):
        """Shape (m, n) of the design matrix."""
        return self._smooth.A.shape

    def normalize(self):
        r"""
        Rescaled instance with unit Lipschitz constant.

        :math:`A` and :math:`b` are divided by :math:`\sqrt{L}` and
        :math:`\rho` by :math:`L`, so the objective is divided by :math:`L`
        and the solution set is unchanged.

        Returns
        -------
        instance : L1LSInstance
        """
        L = self.lipschitz_constant
        scale = 1.0 / np.sqrt(L)

        return L1LSInstance(self.A * scale, self.b * scale, self.rho / L)

    def digest(self):
        """
        Instance digest: dimensions, rho, Lipschitz estimate and checksum.

        Returns
        -------
        digest : dict
        """
        sha = hashlib.sha256()
        sha.update(np.ascontiguousarray(self.A, dtype="<f8").tobytes())
        sha.update(np.ascontiguousarray(self.b, dtype="<f8").tobytes())

        m, n = self.shape
        return {"m": m, "n": n, "rho": self.rho,
                "lipschitz_constant": self.lipschitz_constant,
                "sha256": sha.hexdigest()}


def generate_instance(m, n, sparsity, entry_std=0.1, rho=1.0,
                      random_state=None, return_signal=False):
    """
    Generate a random l1-regularized least squares instance.

    :math:`A` has i.i.d. Gaussian entries with mean 0 and standard deviation
    ``entry_std``. The observations are :math:`b = A x_0`, where :math:`x_0`
    is supported on a uniformly random set of size ``sparsity`` with i.i.d.
    standard normal nonzeros. Samples are drawn from
    ``numpy.random.Generator(PCG64(random_state))``, so a fixed seed fully
    determines the instance.

    Parameters
    ----------
    m : int
        Number of rows.

    n : int
        Number of columns.

    sparsity : int
        Number of nonzeros of the planted signal, 0 <= sparsity <= n.

    entry_std : float (default=0.1)
        Standard deviation of the entries of A.

    rho : float (default=1.0)
        Weight of the l1 term.

    random_state : int or None (default=None)
        The seed used by the random number generator.

    return_signal : bool (default=False)
        If True, the planted signal is returned as well.

    Returns
    -------
    instance : L1LSInstance

    x0 : numpy.ndarray, shape = (n,)
        The planted signal. Only returned if ``return_signal`` is True.
    """
    for name, value in (("m", m), ("n", n)):
        if not isinstance(value, numbers.Integral) or value <= 0:
            raise ValueError("{} must be a positive integer; got {}."
                             .format(name, value))

    if not isinstance(sparsity, numbers.Integral) or sparsity < 0:
        raise ValueError("sparsity must be a nonnegative integer; got {}."
                         .format(sparsity))

    if sparsity > n:
        raise ValueError("sparsity must be <= n; got sparsity={}, n={}."
                         .format(sparsity, n))

    if entry_std <= 0:
        raise ValueError("entry_std must be positive; got {}."
                         .format(entry_std))

    rng = np.random.Generator(np.random.PCG64(random_state))

    A = rng.normal(loc=0.0, scale=entry_std, size=(m, n))

    x0 = np.zeros(n)
    support = rng.choice(n, size=sparsity, replace=False)
    x0[support] = rng.standard_normal(sparsity)

    instance = L1LSInstance(A, A @ x0, rho)

    if return_signal:
        return instance, x0

    return instance
