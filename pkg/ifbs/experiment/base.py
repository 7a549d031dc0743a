"""
Comparison of inertial methods on one l1-LS instance.
"""

# Copyright (C) 2026 ifbs developers

import json
import logging
import os
import time

from multiprocessing import Pool

from ..analysis import classify_DE
from ..analysis import local_curvature
from ..analysis import reference_solve
from ..exceptions import NumericalError
from ..problems import L1LSInstance
from ..problems import write_instance
from ..solvers import run
from ..solvers import SolverTrace
from ..solvers import TerminationRule
from ..solvers import validate
from .config import AlgorithmSpec
from .config import DEFAULT_THRESHOLDS
from .config import parse_schedule


logger = logging.getLogger(__name__)


_STATUS_READY = "ready"
_STATUS_FINISHED = "finished"


def _run_algorithm(instance, spec, f_star, l_E, snapshot_stride):
    """Run one algorithm; numerical failures are returned, not raised."""
    schedule = parse_schedule(spec.schedule, instance, l_E)
    termination = TerminationRule(spec.max_iter, spec.target_gap,
                                  spec.step_tol)

    horizon = max(1, spec.max_iter)
    report = validate(schedule, horizon, instance.lipschitz_constant)
    if spec.algo == "sipm" and not report.sipm_ok:
        logger.warning("Run %s: schedule %s outside the SIPM conditions "
                       "(%s).", spec.label, spec.schedule,
                       ", ".join(report.sipm_reasons))
    elif spec.algo == "ifbs" and not report.convergence_ok:
        logger.warning("Run %s: schedule %s outside the convergence "
                       "conditions (%s).", spec.label, spec.schedule,
                       ", ".join(report.reasons))

    try:
        trace = run(instance, schedule, algo=spec.algo,
                    termination=termination, f_ref=f_star,
                    snapshot_stride=snapshot_stride,
                    restart_test=spec.restart_test)
    except NumericalError as e:
        logger.warning("Run %s aborted: %s", spec.label, e)
        trace = e.trace if e.trace is not None else SolverTrace(spec.algo)
        trace.summary.update({"status": "aborted", "message": str(e)})

    trace.summary.update({"label": spec.label, "schedule_spec": spec.schedule,
                          "restart_test": spec.restart_test})

    return spec.label, trace


class Experiment(object):
    """
    Comparison of inertial methods.

    A certified reference solution is computed once; every algorithm is then
    run from zero and its objective gap recorded against the reference.

    Parameters
    ----------
    name : str
        Experiment name.

    instance : L1LSInstance
        The problem instance.

    algorithms : list of AlgorithmSpec
        The runs.

    gap_tol : float (default=1e-8)
        Duality gap of the reference solve.

    snapshot_stride : int or None (default=None)
        Stride of stored iterates. None selects 1 for n <= 500 and 10
        otherwise.

    thresholds : tuple (default=(1e-2, 1e-4, 1e-6, 1e-8, 1e-10))
        Gap thresholds of the comparison table.

    e_threshold : float (default=1e-4)
        Classification threshold of E.

    n_jobs : int or None (default=None)
        Number of worker processes. None or 1 runs sequentially.

    verbose : int or bool (default=False)
        Controls verbosity of output.

    Attributes
    ----------
    reference_ : ReferenceSolution
        Certified reference solution.

    manifold_ : ManifoldReport
        Partition D/E of the reference gradient.

    l_E_ : float or None
        Local strong convexity on E (smallest nonzero eigenvalue when the
        smallest is zero).

    traces_ : dict
        Trace of each algorithm label.

    n_algorithms_ : int
        The number of algorithms in the experiment.
    """
    def __init__(self, name, instance, algorithms, gap_tol=1e-8,
                 snapshot_stride=None, thresholds=DEFAULT_THRESHOLDS,
                 e_threshold=1e-4, n_jobs=None, verbose=False):

        self.name = name
        self.instance = instance
        self.algorithms = algorithms
        self.gap_tol = gap_tol
        self.snapshot_stride = snapshot_stride
        self.thresholds = thresholds
        self.e_threshold = e_threshold
        self.n_jobs = n_jobs
        self.verbose = verbose

        # attributes
        self.reference_ = None
        self.manifold_ = None
        self.l_E_ = None
        self.traces_ = {}
        self.n_algorithms_ = None

        # timing
        self._time_init = None
        self._time_termination = None

        self._status = None

        self._setup()

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        return

    @classmethod
    def from_config(cls, config, verbose=False):
        """
        Build an experiment from an ``ExperimentConfig``.

        Parameters
        ----------
        config : ExperimentConfig

        verbose : int or bool (default=False)

        Returns
        -------
        experiment : Experiment
        """
        instance = config.build_instance()
        stride = config.resolve_snapshot_stride(instance.dimension)

        return cls(config.name, instance, config.algorithms, config.gap_tol,
                   stride, config.thresholds, config.e_threshold,
                   config.n_jobs, verbose)

    def describe(self):
        """Experiment settings."""
        from .utils import experiment_describe
        return experiment_describe(self)

    def summary(self):
        """Iterations to reach each gap threshold, per algorithm."""
        from .utils import experiment_summary
        return experiment_summary(self)

    def run(self):
        """
        Compute the reference solution and run every algorithm.

        Returns
        -------
        self : object
        """
        self._time_init = time.perf_counter()

        self.reference_ = reference_solve(self.instance, self.gap_tol)
        self.manifold_ = classify_DE(self.reference_.h_star,
                                     self.instance.rho, self.e_threshold)

        if self.manifold_.E.size:
            curvature = local_curvature(self.instance, self.reference_,
                                        self.manifold_)
            self.l_E_ = curvature.l_E or curvature.l_hat_E or None

        if self.verbose:
            logger.info("Reference F*=%.15g, |E|=%d, l_E=%s.",
                        self.reference_.f_star, self.manifold_.E.size,
                        self.l_E_)

        args = [(self.instance, spec, self.reference_.f_star, self.l_E_,
                 self.snapshot_stride) for spec in self.algorithms]

        if self.n_jobs is not None and self.n_jobs > 1:
            with Pool(processes=self.n_jobs) as pool:
                results = pool.starmap(_run_algorithm, args)
        else:
            results = [_run_algorithm(*a) for a in args]

        self.traces_ = dict(results)

        if self.verbose:
            for label, trace in self.traces_.items():
                logger.info("%s: %d iterations, %s.", label, len(trace),
                            trace.summary.get("reason"))

        self._time_termination = time.perf_counter()
        self._status = _STATUS_FINISHED

        return self

    def comparison(self):
        """
        Iterations to reach each gap threshold.

        Returns
        -------
        comparison : dict
            ``{"thresholds": [...], "iterations": {label: [...]}}``, with
            None for thresholds not reached.
        """
        self._check_finished()

        return {
            "name": self.name,
            "f_star": self.reference_.f_star,
            "thresholds": list(self.thresholds),
            "iterations": {
                label: [trace.iterations_to(t) for t in self.thresholds]
                for label, trace in self.traces_.items()},
            "status": {label: trace.summary.get("status")
                       for label, trace in self.traces_.items()}}

    def save(self, output=None):
        """
        Write the instance, the reference solution, the traces and the
        comparison table to a directory.

        Per algorithm label: ``<label>.csv`` (trace rows), ``<label>.json``
        (summary) and ``<label>_snapshots.npz`` (iterates). Wall-clock
        times go to ``timings.json`` only; every other file holds the same data
        across repeated runs.

        Parameters
        ----------
        output : str
            Output directory, created if missing.
        """
        self._check_finished()

        if not isinstance(output, str):
            raise TypeError("output must be a string.")

        os.makedirs(output, exist_ok=True)

        write_instance(self.instance, os.path.join(output, "instance.bin"))
        self.reference_.save(os.path.join(output, "reference.npz"))

        for label, trace in self.traces_.items():
            trace.to_csv(os.path.join(output, "{}.csv".format(label)))
            trace.to_json(os.path.join(output, "{}.json".format(label)))
            trace.save_snapshots(
                os.path.join(output, "{}_snapshots.npz".format(label)))

        with open(os.path.join(output, "comparison.json"), "w") as f:
            json.dump(self.comparison(), f, indent=2, sort_keys=True)

        timings = {"experiment": self.elapsed,
                   "algorithms": {label: trace.summary.get("time")
                                  for label, trace in self.traces_.items()}}
        with open(os.path.join(output, "timings.json"), "w") as f:
            json.dump(timings, f, indent=2, sort_keys=True)

    def _check_finished(self):
        if self._status != _STATUS_FINISHED:
            raise ValueError("Experiment has not been run; call run() first.")

    def _setup(self):
        if not isinstance(self.instance, L1LSInstance):
            raise TypeError("instance is not an instance of L1LSInstance.")

        if not self.algorithms:
            raise ValueError("At least one algorithm is required.")

        for spec in self.algorithms:
            if not isinstance(spec, AlgorithmSpec):
                raise TypeError("algorithms must be AlgorithmSpec instances.")

        if self.n_jobs is not None and self.n_jobs < 1:
            raise ValueError("n_jobs must be None or a positive integer; "
                             "got {}.".format(self.n_jobs))

        self.n_algorithms_ = len(self.algorithms)
        self._status = _STATUS_READY

    @property
    def status(self):
        return self._status

    @property
    def elapsed(self):
        """Wall time of :meth:`run` in seconds."""
        if self._time_termination is None:
            return None
        return self._time_termination - self._time_init
