"""
Local linear rate and oscillation measurements on objective traces.
"""

# Copyright (C) 2026 ifbs developers

import numbers

from dataclasses import dataclass

import numpy as np

from ..solvers.engine import SolverTrace


_GAP_UNDERFLOW = 1e-15


@dataclass
class RateReport:
    """
    Fitted local linear rate of a run.

    Attributes
    ----------
    fitted_rate : float
        Rate q of the fit gap_k ~ C q^k.

    fit_window : tuple
        First and last iteration of the fit.

    r_squared : float
        Coefficient of determination of the log-linear fit.

    n_points : int
        Number of fitted points.

    theoretical_rate : float or None
        1 - sqrt(l_E lambda), when l_E is given.

    oscillation_count : int
        Strict local maxima of the objective after the start.

    mean_oscillation_period : float or None
        Mean spacing between consecutive maxima.

    period_ratio : float or None
        Mean period divided by sqrt(L / l_E).
    """
    fitted_rate: float
    fit_window: tuple
    r_squared: float
    n_points: int
    theoretical_rate: float = None
    oscillation_count: int = 0
    mean_oscillation_period: float = None
    period_ratio: float = None

    def to_dict(self):
        return {"fitted_rate": self.fitted_rate,
                "fit_window": list(self.fit_window),
                "r_squared": self.r_squared, "n_points": self.n_points,
                "theoretical_rate": self.theoretical_rate,
                "oscillation_count": self.oscillation_count,
                "mean_oscillation_period": self.mean_oscillation_period,
                "period_ratio": self.period_ratio}


def _trace_values(trace):
    if isinstance(trace, SolverTrace):
        return trace.k, trace.objective

    values = np.asarray(trace, dtype=float).ravel()
    return np.arange(1, values.size + 1), values


def detect_oscillations(trace, start=0):
    """
    Count strict local maxima of the objective over iterations k > start.

    Parameters
    ----------
    trace : SolverTrace or array-like
        Trace, or objective values of iterations 1, 2, ...

    start : int (default=0)
        Last iteration excluded from the window.

    Returns
    -------
    count : int

    mean_period : float or None
        Mean spacing of consecutive maxima, None with fewer than two.
    """
    k, values = _trace_values(trace)

    mask = k > start
    k, values = k[mask], values[mask]

    if values.size < 3:
        raise ValueError("Oscillation detection requires at least 3 points "
                         "after start={}; got {}.".format(start, values.size))

    interior = (values[1:-1] > values[:-2]) & (values[1:-1] > values[2:])
    maxima = k[1:-1][interior]

    mean_period = float(np.diff(maxima).mean()) if maxima.size >= 2 else None

    return int(maxima.size), mean_period


def fit_local_rate(trace, reference=None, window_fraction=0.5, start=0,
                   l_E=None, lipschitz_constant=None, min_points=10):
    """
    Fit a linear rate to the objective gap over the tail of a run.

    The post-identification gaps (k > start) are truncated at the first gap
    <= 1e-15 and the final ``window_fraction`` of the remaining points is
    fitted by least squares in log scale.

    Parameters
    ----------
    trace : SolverTrace
        Trace of the run.

    reference : ReferenceSolution or None (default=None)
        Reference used for the gap. If None, the gap column of the trace.

    window_fraction : float (default=0.5)
        Fraction of the post-identification points fitted, in (0, 1].

    start : int (default=0)
        Identification iteration; rows with k <= start are excluded.

    l_E : float or None (default=None)
        Local strong convexity, for the theoretical rate.

    lipschitz_constant : float or None (default=None)
        Lipschitz constant, for the oscillation period ratio.

    min_points : int (default=10)
        Minimum number of fitted points.

    Returns
    -------
    report : RateReport
    """
    if not isinstance(window_fraction, numbers.Number) or not (
            0 < window_fraction <= 1):
        raise ValueError("window_fraction must be a value in (0, 1]; got {}."
                         .format(window_fraction))

    k = trace.k
    if reference is not None:
        gap = trace.objective - reference.f_star
    else:
        gap = trace.gap

    mask = k > start
    k, gap = k[mask], gap[mask]

    underflow = np.flatnonzero(~(gap > _GAP_UNDERFLOW))
    if underflow.size:
        k, gap = k[:underflow[0]], gap[:underflow[0]]

    n_points = int(np.ceil(window_fraction * k.size))
    if n_points < min_points:
        raise ValueError("Rate fit requires at least {} points with positive "
                         "gap; got {}.".format(min_points, n_points))

    k, gap = k[-n_points:], gap[-n_points:]
    log_gap = np.log(gap)

    slope, intercept = np.polyfit(k, log_gap, 1)
    residuals = log_gap - (slope * k + intercept)

    ss_res = float(residuals @ residuals)
    ss_tot = float(((log_gap - log_gap.mean()) ** 2).sum())
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0

    theoretical_rate = None
    step_size = float(trace.step_size[-1])
    if l_E is not None:
        theoretical_rate = 1.0 - np.sqrt(min(l_E * step_size, 1.0))

    try:
        count, period = detect_oscillations(trace, start)
    except ValueError:
        count, period = 0, None

    period_ratio = None
    if period is not None and l_E and lipschitz_constant:
        period_ratio = period / np.sqrt(lipschitz_constant / l_E)

    return RateReport(float(np.exp(slope)), (int(k[0]), int(k[-1])),
                      r_squared, n_points, theoretical_rate, count, period,
                      period_ratio)
