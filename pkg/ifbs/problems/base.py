"""
Base smooth oracle and composite problem classes.
"""

# Copyright (C) 2026 ifbs developers

import numbers

from abc import ABCMeta
from abc import abstractmethod

import numpy as np

from .._lib.linalg import check_vector


class SmoothOracle(metaclass=ABCMeta):
    """
    Smooth convex function with Lipschitz continuous gradient.

    Subclasses expose the function value, its gradient and the Lipschitz
    constant :math:`L` of the gradient.
    """
    @property
    @abstractmethod
    def dimension(self):
        """Number of variables n."""

    @property
    @abstractmethod
    def lipschitz_constant(self):
        """Lipschitz constant L of the gradient."""

    @abstractmethod
    def value(self, x):
        """
        Function value.

        Parameters
        ----------
        x : array-like, shape = (n,)

        Returns
        -------
        value : float
        """

    @abstractmethod
    def gradient(self, x):
        """
        Gradient.

        Parameters
        ----------
        x : array-like, shape = (n,)

        Returns
        -------
        gradient : numpy.ndarray, shape = (n,)
        """


class CompositeProblem(object):
    r"""
    Composite problem :math:`F(x) = f(x) + \rho \|x\|_1`.

    Parameters
    ----------
    smooth : object
        The smooth term, an instance inherited from
        ``ifbs.problems.SmoothOracle``.

    rho : float (default=1.0)
        Weight of the :math:`\ell_1` term. This is a value >= 0.
    """
    def __init__(self, smooth, rho=1.0):
        if not isinstance(smooth, SmoothOracle):
            raise TypeError("smooth is not an instance inherited from "
                            "SmoothOracle.")

        if not isinstance(rho, numbers.Number) or not np.isfinite(rho) or (
                rho < 0):
            raise ValueError("rho must be a finite value >= 0; got {}."
                             .format(rho))

        self._smooth = smooth
        self._rho = float(rho)

    @property
    def smooth(self):
        """The smooth term f."""
        return self._smooth

    @property
    def rho(self):
        r"""Weight of the :math:`\ell_1` term."""
        return self._rho

    @property
    def dimension(self):
        """Number of variables n."""
        return self._smooth.dimension

    @property
    def lipschitz_constant(self):
        """Lipschitz constant L of the smooth gradient."""
        return self._smooth.lipschitz_constant

    def objective(self, x):
        r"""
        Objective value :math:`f(x) + \rho\|x\|_1`.

        Parameters
        ----------
        x : array-like, shape = (n,)

        Returns
        -------
        objective : float
        """
        x = check_vector(x, "x", self.dimension)
        return self._smooth.value(x) + self._rho * np.abs(x).sum()

    def gradient_smooth(self, x):
        r"""
        Gradient of the smooth term :math:`\nabla f(x)`.

        Parameters
        ----------
        x : array-like, shape = (n,)

        Returns
        -------
        gradient : numpy.ndarray, shape = (n,)
        """
        x = check_vector(x, "x", self.dimension)
        return self._smooth.gradient(x)
