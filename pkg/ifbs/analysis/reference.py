"""
Duality-gap certified reference solutions of l1-LS problems.
"""

# Copyright (C) 2026 ifbs developers

import logging
import numbers

from dataclasses import dataclass

import numpy as np

from .._lib.linalg import check_vector
from ..exceptions import ConvergenceError
from ..problems.least_squares import L1LSInstance
from ..solvers.engine import ifbs_step
from ..solvers.engine import SolverState
from ..solvers.schedule import AdaptiveRestart
from ..solvers.schedule import FistaBT
from ..solvers.schedule import restart_signal


logger = logging.getLogger(__name__)


@dataclass
class ReferenceSolution:
    """
    Certified reference solution.

    Attributes
    ----------
    x_star : numpy.ndarray
        Reference minimizer.

    f_star : float
        Certified lower bound F(x_star) - duality_gap of the optimal value.

    duality_gap : float
        Duality gap at x_star.

    h_star : numpy.ndarray
        Smooth gradient at x_star.

    n_iter : int
        Iterations used.
    """
    x_star: np.ndarray
    f_star: float
    duality_gap: float
    h_star: np.ndarray
    n_iter: int = 0

    def to_dict(self):
        return {"f_star": self.f_star, "duality_gap": self.duality_gap,
                "n_iter": self.n_iter, "x_star": self.x_star.tolist(),
                "h_star": self.h_star.tolist()}

    def save(self, path):
        """Write the solution to a numpy ``.npz`` file."""
        np.savez(path, x_star=self.x_star, h_star=self.h_star,
                 f_star=self.f_star, duality_gap=self.duality_gap,
                 n_iter=self.n_iter)

    @classmethod
    def load(cls, path):
        """Read a solution written by :meth:`save`."""
        with np.load(path) as data:
            return cls(data["x_star"], float(data["f_star"]),
                       float(data["duality_gap"]), data["h_star"],
                       int(data["n_iter"]))


def _check_instance(instance):
    if not isinstance(instance, L1LSInstance):
        raise TypeError("instance must be an instance of L1LSInstance.")


def dual_point(instance, x):
    r"""
    Dual feasible point :math:`\nu = s(Ax - b)` with
    :math:`s = \min(1, \rho / \|A^T(Ax - b)\|_\infty)`.

    Parameters
    ----------
    instance : L1LSInstance

    x : array-like, shape = (n,)

    Returns
    -------
    nu : numpy.ndarray, shape = (m,)
    """
    _check_instance(instance)
    x = check_vector(x, "x", instance.dimension)

    r = instance.A @ x - instance.b
    correlation = np.abs(instance.A.T @ r).max()

    if correlation <= instance.rho:
        return r

    return (instance.rho / correlation) * r


def duality_gap(instance, x):
    r"""
    Duality gap :math:`F(x) + \frac{1}{2}\|\nu\|^2 + \langle b, \nu\rangle`
    at the dual point of :func:`dual_point`.

    Parameters
    ----------
    instance : L1LSInstance

    x : array-like, shape = (n,)

    Returns
    -------
    gap : float
        Nonnegative upper bound of F(x) - F*.
    """
    nu = dual_point(instance, x)
    gap = instance.objective(x) + 0.5 * float(nu @ nu) + float(
        instance.b @ nu)

    return max(gap, 0.0)


def reference_solve(instance, gap_tol=1e-8, max_iter=200000, check_every=10,
                    x0=None):
    """
    High accuracy solve certified by the duality gap.

    Runs FISTA with adaptive restart and step 1/L, evaluating the duality gap
    every ``check_every`` iterations, until the gap is <= ``gap_tol``.

    Parameters
    ----------
    instance : L1LSInstance

    gap_tol : float (default=1e-8)
        Target duality gap.

    max_iter : int (default=200000)
        Maximum number of iterations.

    check_every : int (default=10)
        Iterations between gap evaluations.

    x0 : array-like or None (default=None)
        Initial point. If None, zeros.

    Returns
    -------
    solution : ReferenceSolution
    """
    _check_instance(instance)

    if not isinstance(gap_tol, numbers.Number) or gap_tol <= 0:
        raise ValueError("gap_tol must be positive; got {}.".format(gap_tol))

    if not isinstance(check_every, numbers.Integral) or check_every < 1:
        raise ValueError("check_every must be a positive integer; got {}."
                         .format(check_every))

    n = instance.dimension
    x0 = np.zeros(n) if x0 is None else check_vector(x0, "x0", n)

    schedule = AdaptiveRestart(FistaBT()).bind(instance.lipschitz_constant)
    state = SolverState.initial(x0)

    best_gap = np.inf
    best_x = x0
    feedback = False

    for k in range(1, max_iter + 1):
        if k == 1 or k % check_every == 0:
            gap = duality_gap(instance, state.x_curr)

            if gap < best_gap:
                best_gap = gap
                best_x = state.x_curr

            logger.debug("reference solve k=%d, duality gap=%.3e.", k, gap)

            if gap <= gap_tol:
                return _solution(instance, state.x_curr, gap, k)

        alpha, step_size = schedule.next_params(k, feedback)
        state_next = ifbs_step(instance, state, alpha, step_size)
        feedback = restart_signal(state_next.y_curr, state_next.x_curr,
                                  state.x_curr)
        state = state_next

    gap = duality_gap(instance, state.x_curr)
    if gap <= gap_tol:
        return _solution(instance, state.x_curr, gap, max_iter)

    if gap < best_gap:
        best_gap, best_x = gap, state.x_curr

    raise ConvergenceError("reference solve did not reach gap_tol={:.1e} in "
                           "{} iterations; best gap={:.3e}."
                           .format(gap_tol, max_iter, best_gap),
                           best=best_x, value=best_gap)


def _solution(instance, x, gap, n_iter):
    x = x.copy()
    f_star = instance.objective(x) - gap
    h_star = instance.gradient_smooth(x)

    logger.info("reference solve converged in %d iterations, F*=%.15g, "
                "gap=%.3e.", n_iter, f_star, gap)

    return ReferenceSolution(x, f_star, gap, h_star, n_iter)


def compare_references(ref1, ref2, gap_tol):
    """
    Cross-check two reference solutions of the same instance.

    The smooth gradient is constant over the solution set, so the gradients
    of two certified solutions should agree up to about sqrt(gap_tol).

    Parameters
    ----------
    ref1 : ReferenceSolution

    ref2 : ReferenceSolution

    gap_tol : float
        Duality gap tolerance of the solves.

    Returns
    -------
    comparison : dict
        ``h_diff`` (max abs gradient difference), ``x_diff`` (max abs
        iterate difference), ``tolerance`` (10 sqrt(gap_tol)) and
        ``consistent``.
    """
    h_diff = float(np.abs(ref1.h_star - ref2.h_star).max())
    x_diff = float(np.abs(ref1.x_star - ref2.x_star).max())
    tolerance = 10.0 * np.sqrt(gap_tol)
    consistent = h_diff <= tolerance

    if not consistent:
        logger.warning("reference gradients differ by %.3e > %.3e.",
                       h_diff, tolerance)

    return {"h_diff": h_diff, "x_diff": x_diff, "tolerance": tolerance,
            "consistent": bool(consistent)}
