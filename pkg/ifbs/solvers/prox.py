"""
Proximal operator of the l1 norm and orthant projections.
"""

# Copyright (C) 2026 ifbs developers

import numbers

import numpy as np

from .._lib.linalg import check_vector


def sgn(v):
    """
    Sign function with sgn(0) = +1.

    Parameters
    ----------
    v : float or array-like

    Returns
    -------
    sign : float or numpy.ndarray
    """
    return np.where(np.asarray(v) >= 0, 1.0, -1.0)


def _check_threshold(nu):
    if not isinstance(nu, numbers.Number) or not np.isfinite(nu) or nu < 0:
        raise ValueError("nu must be a finite value >= 0; got {}."
                         .format(nu))


def soft_threshold(v, nu):
    r"""
    Soft thresholding :math:`S_\nu(v) = [|v| - \nu]_+ \mathrm{sgn}(v)`.

    Parameters
    ----------
    v : float
        Input value.

    nu : float
        Threshold, nu >= 0.

    Returns
    -------
    value : float
    """
    _check_threshold(nu)
    return float(max(abs(v) - nu, 0.0) * sgn(v))


def prox_l1(z, nu):
    r"""
    Proximal operator of :math:`\nu\|\cdot\|_1`, componentwise soft
    thresholding.

    Parameters
    ----------
    z : array-like, shape = (n,)
        Input vector.

    nu : float
        Threshold, nu >= 0.

    Returns
    -------
    p : numpy.ndarray, shape = (n,)
    """
    _check_threshold(nu)
    z = np.asarray(z, dtype=float)

    return np.maximum(np.abs(z) - nu, 0.0) * np.sign(z)


class SignPattern(object):
    """
    Signs on an index set, defining the orthant
    :math:`\\{x_E : s_i x_i \\geq 0\\}`.

    Parameters
    ----------
    indices : array-like of int
        Index set E (0-based).

    signs : array-like
        Signs in {+1, -1}, one per index.
    """
    def __init__(self, indices, signs):
        indices = np.asarray(indices, dtype=int)
        signs = np.asarray(signs, dtype=float)

        if indices.ndim != 1 or signs.shape != indices.shape:
            raise ValueError("indices and signs must be one-dimensional "
                             "arrays of equal length; got {} and {}."
                             .format(indices.shape, signs.shape))

        if not np.all(np.abs(signs) == 1):
            raise ValueError("signs must be +1 or -1.")

        self.indices = indices
        self.signs = signs

    @classmethod
    def from_gradient(cls, h_star, E):
        """Orthant of the local problem, signs -sgn(h*_i) on E."""
        E = np.asarray(E, dtype=int)
        return cls(E, -sgn(np.asarray(h_star, dtype=float)[E]))

    def __len__(self):
        return len(self.indices)


def project_orthant(x_E, s):
    """
    Project onto the orthant defined by a sign pattern.

    Parameters
    ----------
    x_E : array-like, shape = (|E|,)
        Vector restricted to E.

    s : SignPattern or array-like
        Sign pattern on E.

    Returns
    -------
    projection : numpy.ndarray, shape = (|E|,)
    """
    signs = s.signs if isinstance(s, SignPattern) else np.asarray(
        s, dtype=float)
    x_E = check_vector(x_E, "x_E", len(signs))

    return np.where(signs * x_E >= 0, x_E, 0.0)


def check_prox_optimality(z, p, nu, tol=1e-12):
    """
    Check the optimality condition of the l1 proximal operator,
    :math:`z - p \\in \\nu \\partial\\|p\\|_1`.

    Parameters
    ----------
    z : array-like, shape = (n,)
        Prox input.

    p : array-like, shape = (n,)
        Candidate prox output.

    nu : float
        Threshold, nu >= 0.

    tol : float (default=1e-12)
        Absolute tolerance.

    Returns
    -------
    optimal : bool
    """
    _check_threshold(nu)
    z = check_vector(z, "z")
    p = check_vector(p, "p", z.size)

    nonzero = p != 0
    active = np.abs(z - p - nu * np.sign(p)) <= tol
    inactive = np.abs(z) <= nu + tol

    return bool(np.all(np.where(nonzero, active, inactive)))
