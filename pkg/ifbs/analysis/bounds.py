"""
Explicit bounds on the identification iterations and on the sum of squared
steps of constant-band momentum schedules.
"""

# Copyright (C) 2026 ifbs developers

import numbers

import numpy as np

from .._lib.linalg import check_vector


def _start_terms(problem, alpha_1, lambda_1, f_star, x0, x1):
    n = problem.dimension
    x0 = check_vector(x0, "x0", n)
    x1 = check_vector(x1, "x1", n)

    if lambda_1 <= 0:
        raise ValueError("lambda_1 must be positive; got {}."
                         .format(lambda_1))

    delta = x1 - x0
    return problem.objective(x1) - f_star + alpha_1 / (2.0 * lambda_1) * (
        float(delta @ delta))


def identification_bounds(problem, alpha_low, alpha_high, alpha_1, lambda_1,
                          x_star, f_star, omega, x0, x1):
    """
    Upper bounds of the sign and support identification iterations.

    With :math:`\\underline{\\alpha} \\le \\alpha_k \\le \\overline{\\alpha}`,
    the bracket

    .. math::

        B = \\frac{2\\overline{\\alpha}(1+\\overline{\\alpha})}
        {\\underline{\\alpha}(1-\\overline{\\alpha})L^2}
        \\left(F(x^1) - F^* + \\frac{\\alpha_1}{2\\lambda_1}\\|x^1-x^0\\|^2
        \\right) + \\|x^1 - x^*\\|^2 - \\overline{\\alpha}\\|x^0 - x^*\\|^2

    gives :math:`\\bar K_E = B/(\\rho^2\\lambda_1^2) +
    \\underline{\\alpha}/(1-\\underline{\\alpha})` and
    :math:`\\bar K_D = B/(\\omega^2\\lambda_1^2) +
    \\underline{\\alpha}/(1-\\underline{\\alpha}) + 2`.

    The constants are derived for L = 1; apply them to instances normalized
    with ``L1LSInstance.normalize``.

    Parameters
    ----------
    problem : CompositeProblem

    alpha_low : float
        Lower momentum bound, 0 < alpha_low <= alpha_high.

    alpha_high : float
        Upper momentum bound, alpha_high < 1.

    alpha_1 : float
        First momentum parameter.

    lambda_1 : float
        First step size.

    x_star : array-like, shape = (n,)
        A solution.

    f_star : float
        Optimal value.

    omega : float
        Margin on D, finite and positive.

    x0, x1 : array-like, shape = (n,)
        Initial points x^0 and x^1.

    Returns
    -------
    K_E_bar : float

    K_D_bar : float
    """
    if not isinstance(alpha_low, numbers.Number) or alpha_low <= 0:
        raise ValueError("alpha_low must be positive; got {}."
                         .format(alpha_low))

    if not alpha_low <= alpha_high < 1:
        raise ValueError("alpha_high must satisfy alpha_low <= alpha_high < 1;"
                         " got alpha_low={}, alpha_high={}."
                         .format(alpha_low, alpha_high))

    if problem.rho <= 0:
        raise ValueError("rho must be positive; got {}.".format(problem.rho))

    if not np.isfinite(omega) or omega <= 0:
        raise ValueError("omega must be finite and positive; got {}."
                         .format(omega))

    x_star = check_vector(x_star, "x_star", problem.dimension)
    start = _start_terms(problem, alpha_1, lambda_1, f_star, x0, x1)

    L = problem.lipschitz_constant
    d1 = np.asarray(x1, dtype=float) - x_star
    d0 = np.asarray(x0, dtype=float) - x_star

    bracket = (2.0 * alpha_high * (1.0 + alpha_high) * start /
               (alpha_low * (1.0 - alpha_high) * L ** 2) +
               float(d1 @ d1) - alpha_high * float(d0 @ d0))

    offset = alpha_low / (1.0 - alpha_low)
    K_E_bar = bracket / (problem.rho * lambda_1) ** 2 + offset
    K_D_bar = bracket / (omega * lambda_1) ** 2 + offset + 2.0

    return K_E_bar, K_D_bar


def step_sum_bounds(problem, alpha_low, alpha_high, alpha_1, lambda_1, f_star,
                    x0, x1):
    r"""
    Upper bounds of :math:`\sum_k \|x^k - x^{k-1}\|^2`.

    With :math:`S = F(x^1) - F^* + \frac{\alpha_1}{2\lambda_1}\|x^1-x^0\|^2`,
    the first bound is :math:`2S/(2L(1-\overline{\alpha}) - 1)` and the
    second is :math:`2S/(L^2\underline{\alpha}(1-\overline{\alpha}))`.
    As for :func:`identification_bounds`, the constants are derived for
    L = 1.

    Parameters
    ----------
    problem : CompositeProblem

    alpha_low : float
        Lower momentum bound, >= 0.

    alpha_high : float
        Upper momentum bound, < 1.

    alpha_1 : float
        First momentum parameter.

    lambda_1 : float
        First step size.

    f_star : float
        Optimal value.

    x0, x1 : array-like, shape = (n,)
        Initial points x^0 and x^1.

    Returns
    -------
    bound_high : float or None
        First bound, None unless 2L(1 - alpha_high) > 1.

    bound_band : float or None
        Second bound, None unless alpha_low > 0.
    """
    if not 0 <= alpha_low <= alpha_high < 1:
        raise ValueError("Momentum bounds must satisfy 0 <= alpha_low <= "
                         "alpha_high < 1; got alpha_low={}, alpha_high={}."
                         .format(alpha_low, alpha_high))

    start = _start_terms(problem, alpha_1, lambda_1, f_star, x0, x1)
    L = problem.lipschitz_constant

    denominator = 2.0 * L * (1.0 - alpha_high) - 1.0
    bound_high = 2.0 * start / denominator if denominator > 0 else None

    bound_band = None
    if alpha_low > 0:
        bound_band = 2.0 * start / (L ** 2 * alpha_low * (1.0 - alpha_high))

    return bound_high, bound_band
