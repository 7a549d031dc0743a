"""
Manifold identification diagnostics.
"""

# Copyright (C) 2026 ifbs developers

import numbers

from dataclasses import dataclass

import numpy as np

from .._lib.linalg import check_vector
from .._lib.linalg import smallest_nonzero_restricted_eigenvalue
from .._lib.linalg import smallest_restricted_eigenvalue
from ..problems.least_squares import L1LSInstance
from ..solvers.prox import sgn


@dataclass
class ManifoldReport:
    """
    Partition of the coordinates by the optimal gradient and identification
    iterations of a run.

    Attributes
    ----------
    D : numpy.ndarray
        Indices with rho - |h*_i| > e_threshold, zero at every solution.

    E : numpy.ndarray
        Remaining indices, containing the support of every solution.

    omega : float
        Margin min over D of rho - |h*_i|; inf if D is empty.

    e_threshold : float
        Threshold used to classify E.

    K_sign : int or None
        Least K such that the sign condition holds on E for every recorded
        k > K.

    K_support : int or None
        Least K such that x^k and y^k vanish on D for every recorded k > K.

    window : int or None
        Number of recorded iterations analyzed.

    bound_K_E, bound_K_D : float or None
        Explicit upper bounds of K_sign and K_support.

    note : str or None
        Applicable result when explicit bounds are unavailable.
    """
    D: np.ndarray
    E: np.ndarray
    omega: float
    e_threshold: float
    K_sign: int = None
    K_support: int = None
    window: int = None
    bound_K_E: float = None
    bound_K_D: float = None
    note: str = None

    def to_dict(self):
        return {"D": self.D.tolist(), "E": self.E.tolist(),
                "omega": self.omega if np.isfinite(self.omega) else None,
                "e_threshold": self.e_threshold, "K_sign": self.K_sign,
                "K_support": self.K_support, "window": self.window,
                "bound_K_E": self.bound_K_E, "bound_K_D": self.bound_K_D,
                "note": self.note}


def classify_DE(h_star, rho, threshold=1e-4):
    """
    Split the coordinates into D = {i : rho - |h*_i| > threshold} and its
    complement E.

    Parameters
    ----------
    h_star : array-like, shape = (n,)
        Smooth gradient at a solution.

    rho : float
        Weight of the l1 term, rho > 0.

    threshold : float (default=1e-4)
        Classification threshold.

    Returns
    -------
    report : ManifoldReport
    """
    h_star = check_vector(h_star, "h_star")

    if not isinstance(rho, numbers.Number) or rho <= 0:
        raise ValueError("rho must be positive; got {}.".format(rho))

    if not isinstance(threshold, numbers.Number) or threshold <= 0:
        raise ValueError("threshold must be positive; got {}."
                         .format(threshold))

    margin = rho - np.abs(h_star)
    in_E = margin <= threshold

    E = np.flatnonzero(in_E)
    D = np.flatnonzero(~in_E)
    omega = float(margin[D].min()) if D.size else np.inf

    return ManifoldReport(D, E, omega, threshold)


def detect_identification(trace, problem, reference, report):
    """
    Measure the iterations after which the sign condition on E and the
    support condition on D hold for the rest of a recorded run.

    The sign condition at k >= 2 requires the prox argument that produced
    x^k to have sign -sgn(h*_i) on E. The support condition requires
    x^k_i = y^k_i = 0 on D.

    Parameters
    ----------
    trace : SolverTrace
        Trace with a snapshot at every recorded iteration.

    problem : CompositeProblem

    reference : ReferenceSolution

    report : ManifoldReport
        Output of :func:`classify_DE`.

    Returns
    -------
    report : ManifoldReport
        Copy of ``report`` with ``K_sign``, ``K_support`` and ``window``.
    """
    if not trace.has_dense_snapshots:
        raise ValueError("Identification analysis requires a snapshot at "
                         "every iteration; rerun with snapshot_stride=1.")

    k = trace.k
    X = trace.snapshot_x
    Y = trace.snapshot_y
    step_sizes = trace.step_size

    E, D = report.E, report.D
    target = -sgn(reference.h_star[E])

    sign_ok = np.ones(len(k), dtype=bool)
    support_ok = np.ones(len(k), dtype=bool)

    for i in range(1, len(k)):
        if E.size:
            if trace.algorithm == "sipm":
                gradient = problem.gradient_smooth(X[i - 1])
            else:
                gradient = problem.gradient_smooth(Y[i])
            argument = Y[i] - step_sizes[i - 1] * gradient
            sign_ok[i] = np.array_equal(sgn(argument[E]), target)

        if D.size:
            support_ok[i] = not (np.any(X[i, D]) or np.any(Y[i, D]))

    return ManifoldReport(D, E, report.omega, report.e_threshold,
                          K_sign=_last_violation(k, sign_ok),
                          K_support=_last_violation(k, support_ok),
                          window=len(k), bound_K_E=report.bound_K_E,
                          bound_K_D=report.bound_K_D, note=report.note)


def _last_violation(k, ok):
    if len(k) < 2 or not ok[-1]:
        return None

    failed = np.flatnonzero(~ok[1:])
    if not failed.size:
        return 1

    return max(1, int(k[1:][failed[-1]]))


def local_objective(problem, h_star, E, x_E):
    r"""
    Local function :math:`\phi(x_E) = -h_E^{*T} x_E + f((x_E, 0))`, which
    coincides with F on the identified manifold.

    Parameters
    ----------
    problem : CompositeProblem

    h_star : array-like, shape = (n,)

    E : array-like of int

    x_E : array-like, shape = (|E|,)

    Returns
    -------
    value : float
    """
    h_star = check_vector(h_star, "h_star", problem.dimension)
    E = np.asarray(E, dtype=int)
    x_E = check_vector(x_E, "x_E", E.size)

    x = np.zeros(problem.dimension)
    x[E] = x_E

    return -float(h_star[E] @ x_E) + problem.smooth.value(x)


@dataclass
class LocalCurvature:
    """
    Curvature of the local function on E.

    Attributes
    ----------
    l_E : float
        Smallest eigenvalue of A_E^T A_E.

    l_hat_E : float
        Smallest nonzero eigenvalue of A_E^T A_E.

    strict_complementarity : bool
        Whether E equals the support of the reference solution.
    """
    l_E: float
    l_hat_E: float
    strict_complementarity: bool


def local_curvature(instance, reference, report, zero_tol=1e-10,
                    max_size=2000):
    """
    Restricted curvature of an l1-LS instance on E.

    Parameters
    ----------
    instance : L1LSInstance

    reference : ReferenceSolution

    report : ManifoldReport

    zero_tol : float (default=1e-10)
        Eigenvalues below this value are treated as zero.

    max_size : int (default=2000)
        Cap of the dense eigensolve.

    Returns
    -------
    curvature : LocalCurvature
    """
    if not isinstance(instance, L1LSInstance):
        raise TypeError("Restricted curvature is only available for "
                        "L1LSInstance.")

    E = report.E
    if not E.size:
        raise ValueError("E is empty.")

    l_E = smallest_restricted_eigenvalue(instance.A, E, max_size)
    l_hat_E = smallest_nonzero_restricted_eigenvalue(instance.A, E, zero_tol,
                                                     max_size)
    support = np.flatnonzero(reference.x_star)

    return LocalCurvature(l_E, l_hat_E, bool(np.array_equal(support, E)))
