"""
Experiment utilities functions.
"""

# Copyright (C) 2026 ifbs developers

import logging

import numpy as np
import pandas as pd

from ..analysis import classify_DE
from ..analysis import detect_identification
from ..analysis import fit_local_rate
from ..analysis import identification_bounds
from ..analysis import local_curvature
from ..solvers import validate
from ..solvers.schedule import _GUARANTEE_BOUNDS
from ..solvers.schedule import _GUARANTEE_NO_BOUNDS
from .base import Experiment
from .config import parse_schedule


logger = logging.getLogger(__name__)


NOTE_EXISTENCE_ONLY = ("finite identification is existence-only for this "
                       "momentum schedule; no explicit bound on K_E or K_D "
                       "applies")


def _check_experiment(experiment):
    if not isinstance(experiment, Experiment):
        raise TypeError("Experiment {} is not an instance of Experiment."
                        .format(experiment.__class__.__name__))


def experiment_describe(experiment):
    """
    Experiment settings.

    Parameters
    ----------
    experiment : object
        An experiment instance.
    """
    _check_experiment(experiment)

    m, n = experiment.instance.shape

    df_algorithms = pd.DataFrame(
        [(spec.algo, spec.schedule, spec.max_iter)
         for spec in experiment.algorithms],
        columns=["algo", "schedule", "max_iter"],
        index=[spec.label for spec in experiment.algorithms])
    df_string = " "*6 + df_algorithms.to_string().replace("\n", "\n      ")

    stride = experiment.snapshot_stride
    stride = "not set" if stride is None else stride
    n_jobs = "sequential" if experiment.n_jobs is None else experiment.n_jobs

    report = (
        "=====================================================\n"
        "  Experiment: {}\n"
        "=====================================================\n"
        "    Instance:           {:>25}\n"
        "    rho:                {:>25.6g}\n"
        "    Lipschitz constant: {:>25.6g}\n"
        "    Number of runs:     {:>25}\n"
        "\n"
        "    Options:\n"
        "      gap_tol           {:>25.1e}\n"
        "      e_threshold       {:>25.1e}\n"
        "      snapshot_stride   {:>25}\n"
        "      n_jobs            {:>25}\n"
        "\n"
        "    Algorithms:\n\n{}\n"
        "  -------------------------------------------------\n"
        ).format(experiment.name, "{} x {}".format(m, n),
                 experiment.instance.rho,
                 experiment.instance.lipschitz_constant,
                 experiment.n_algorithms_, experiment.gap_tol,
                 experiment.e_threshold, stride, n_jobs, df_string)

    print(report)


def experiment_summary(experiment):
    """
    Iterations to reach each gap threshold, per algorithm.

    Parameters
    ----------
    experiment : object
        An experiment instance.

    Returns
    -------
    summary : pandas.DataFrame
    """
    _check_experiment(experiment)
    comparison = experiment.comparison()

    columns = ["gap <= {:.0e}".format(t) for t in comparison["thresholds"]]

    rows = {}
    for label, iterations in comparison["iterations"].items():
        trace = experiment.traces_[label]
        row = dict(zip(columns, iterations))
        row.update({"n_iter": len(trace),
                    "reason": trace.summary.get("reason"),
                    "status": trace.summary.get("status"),
                    "n_restarts": trace.summary.get("n_restarts")})
        rows[label] = row

    df_summary = pd.DataFrame.from_dict(rows, orient="index")
    return df_summary[columns + ["n_iter", "reason", "status", "n_restarts"]]


def analyze_trace(instance, reference, trace, e_threshold=1e-4,
                  window_fraction=0.5, horizon=1000):
    """
    Identification and local rate analysis of one run.

    Runs the D/E classification, the identification measurement (when the
    trace has dense snapshots), the explicit identification bounds (when
    the schedule has a constant momentum band), the local rate fit and the
    oscillation count.

    Parameters
    ----------
    instance : L1LSInstance

    reference : ReferenceSolution

    trace : SolverTrace
        Trace with ``schedule_spec`` in its summary.

    e_threshold : float (default=1e-4)
        Classification threshold of E.

    window_fraction : float (default=0.5)
        Fraction of the post-identification points used by the rate fit.

    horizon : int (default=1000)
        Horizon of the schedule validation.

    Returns
    -------
    analysis : dict
        ``manifold`` and ``rate`` reports, plus ``messages``.
    """
    messages = []
    report = classify_DE(reference.h_star, instance.rho, e_threshold)

    l_E = None
    if report.E.size:
        curvature = local_curvature(instance, reference, report)
        l_E = curvature.l_E or curvature.l_hat_E or None

    if trace.has_dense_snapshots:
        report = detect_identification(trace, instance, reference, report)
    else:
        messages.append("identification not measured: snapshots are stored "
                        "every {} iterations; rerun with "
                        "snapshot_stride=1.".format(trace.snapshot_stride))

    spec = trace.summary.get("schedule_spec")
    guarantees = []
    if spec is not None:
        schedule = parse_schedule(spec, instance, l_E)
        guarantees = validate(schedule, horizon,
                              instance.lipschitz_constant).guarantees

    if (_GUARANTEE_BOUNDS in guarantees and trace.algorithm == "ifbs" and
            len(trace)):
        if abs(instance.lipschitz_constant - 1.0) > 1e-6:
            logger.warning("Explicit identification bounds assume L = 1; "
                           "got L=%.6g. Use a normalized instance.",
                           instance.lipschitz_constant)

        alphas = trace.alpha
        x0 = trace.snapshot_x[0] if len(trace.snapshot_k) else np.zeros(
            instance.dimension)
        omega = report.omega if np.isfinite(report.omega) else 1.0

        K_E_bar, K_D_bar = identification_bounds(
            instance, alphas.min(), alphas.max(), alphas[0],
            trace.step_size[0], reference.x_star, reference.f_star, omega,
            x0, x0)

        report.bound_K_E = K_E_bar
        report.bound_K_D = K_D_bar if np.isfinite(report.omega) else None
    elif _GUARANTEE_NO_BOUNDS in guarantees:
        report.note = NOTE_EXISTENCE_ONLY

    start = max(filter(None, (report.K_sign, report.K_support)), default=0)

    rate = None
    try:
        rate = fit_local_rate(trace, reference, window_fraction, start, l_E,
                              instance.lipschitz_constant)
    except ValueError as e:
        messages.append("rate not fitted: {}".format(e))

    return {"label": trace.summary.get("label"),
            "manifold": report.to_dict(),
            "rate": rate.to_dict() if rate is not None else None,
            "l_E": l_E,
            "messages": messages}
