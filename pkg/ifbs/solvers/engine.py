"""
Inertial forward-backward splitting and inertial proximal method drivers.
"""

# Copyright (C) 2026 ifbs developers

import json
import logging
import numbers
import time

from dataclasses import dataclass

import numpy as np
import pandas as pd

from .._lib.linalg import check_vector
from ..exceptions import NumericalError
from ..problems.base import CompositeProblem
from .prox import prox_l1
from .schedule import restart_signal
from .schedule import Schedule


logger = logging.getLogger(__name__)


_ALGORITHMS = ("ifbs", "sipm")
_RESTART_TESTS = ("gradient", "objective")

TRACE_COLUMNS = ["k", "obj", "gap", "step_norm", "alpha", "lambda", "energy",
                 "restart", "switch"]

_REASON_TARGET_GAP = "target_gap"
_REASON_STEP_TOL = "step_tol"
_REASON_MAX_ITER = "max_iter"
_REASON_ABORTED = "aborted"


@dataclass
class SolverState:
    """
    Iterates of an inertial method at iteration k.

    Attributes
    ----------
    x_curr : numpy.ndarray
        Current iterate x^k.

    x_prev : numpy.ndarray
        Previous iterate x^{k-1}.

    y_curr : numpy.ndarray
        Extrapolated point y^k.

    k : int
        Iteration index, k >= 1.

    last_alpha : float
        Momentum used to produce x^k.

    last_lambda : float
        Step size used to produce x^k.
    """
    x_curr: np.ndarray
    x_prev: np.ndarray
    y_curr: np.ndarray
    k: int = 1
    last_alpha: float = 0.0
    last_lambda: float = np.nan

    def __post_init__(self):
        self.x_curr = check_vector(self.x_curr, "x_curr")
        n = self.x_curr.size
        self.x_prev = check_vector(self.x_prev, "x_prev", n)
        self.y_curr = check_vector(self.y_curr, "y_curr", n)

        if not isinstance(self.k, numbers.Integral) or self.k < 1:
            raise ValueError("k must be an integer >= 1; got {}."
                             .format(self.k))

    @classmethod
    def initial(cls, x0):
        """State x^1 = x^0 = y^1 = x0."""
        x0 = check_vector(x0, "x0")
        return cls(x0.copy(), x0.copy(), x0.copy())

    @property
    def delta(self):
        """Last step x^k - x^{k-1}."""
        return self.x_curr - self.x_prev


@dataclass
class TerminationRule:
    """
    Stopping criteria of a run.

    Attributes
    ----------
    max_iter : int
        Largest recorded iteration index. 0 records nothing.

    target_gap : float or None (default=None)
        Stop when F(x^k) - F_ref <= target_gap. Requires a reference value.

    step_tol : float or None (default=None)
        Stop when ||x^k - x^{k-1}|| <= step_tol, for k >= 2.
    """
    max_iter: int = 1000
    target_gap: float = None
    step_tol: float = None

    def __post_init__(self):
        if not isinstance(self.max_iter, numbers.Integral) or (
                self.max_iter < 0):
            raise ValueError("max_iter must be a nonnegative integer; got {}."
                             .format(self.max_iter))

        for name in ("target_gap", "step_tol"):
            value = getattr(self, name)
            if value is not None and (not isinstance(value, numbers.Number)
                                      or value < 0):
                raise ValueError("{} must be None or a value >= 0; got {}."
                                 .format(name, value))


class SolverTrace(object):
    """
    Per-iteration record of a run.

    Rows hold, for each recorded k: the objective F(x^k), the gap
    F(x^k) - F_ref, the step norm ||x^k - x^{k-1}||, the parameters
    (alpha_k, lambda_k) emitted at k, the energy E_k, and whether a restart
    signal was received and a schedule switch happened at k.

    Parameters
    ----------
    algorithm : str (default="ifbs")
        Algorithm name.

    schedule : str or None (default=None)
        Schedule description.

    f_ref : float or None (default=None)
        Reference objective value used for the gap column.

    snapshot_stride : int or None (default=None)
        Iterates are stored for k with (k - 1) % snapshot_stride == 0. None
        disables snapshots.

    Attributes
    ----------
    summary : dict
        Run summary: iterations, final objective, termination reason,
        restarts, switch iteration, status and timing.

    x_final : numpy.ndarray or None
        Last recorded iterate.
    """
    def __init__(self, algorithm="ifbs", schedule=None, f_ref=None,
                 snapshot_stride=None):
        if snapshot_stride is not None and (
                not isinstance(snapshot_stride, numbers.Integral) or
                snapshot_stride < 1):
            raise ValueError("snapshot_stride must be None or a positive "
                             "integer; got {}.".format(snapshot_stride))

        self.algorithm = algorithm
        self.schedule = schedule
        self.f_ref = f_ref
        self.snapshot_stride = snapshot_stride

        self._rows = {column: [] for column in TRACE_COLUMNS}
        self._snapshots_k = []
        self._snapshots_x = []
        self._snapshots_y = []

        self.x_final = None
        self.summary = {}

    def __len__(self):
        return len(self._rows["k"])

    def append(self, k, obj, step_norm, alpha, step_size, energy,
               restart=False, switch=False):
        """Append the row of iteration k."""
        if self._rows["k"] and k <= self._rows["k"][-1]:
            raise ValueError("Rows must be strictly increasing in k; got {} "
                             "after {}.".format(k, self._rows["k"][-1]))

        gap = obj - self.f_ref if self.f_ref is not None else np.nan

        for column, value in zip(TRACE_COLUMNS, (
                k, obj, gap, step_norm, alpha, step_size, energy,
                int(restart), int(switch))):
            self._rows[column].append(value)

    def wants_snapshot(self, k):
        """Whether iteration k is stored."""
        return (self.snapshot_stride is not None and
                (k - 1) % self.snapshot_stride == 0)

    def add_snapshot(self, k, x, y):
        """Store the iterates x^k and y^k."""
        self._snapshots_k.append(k)
        self._snapshots_x.append(np.array(x, dtype=float))
        self._snapshots_y.append(np.array(y, dtype=float))

    def column(self, name):
        """Values of a trace column as numpy array."""
        if name not in self._rows:
            raise ValueError("Column '{}' is not valid. Available columns "
                             "are {}.".format(name, TRACE_COLUMNS))
        return np.asarray(self._rows[name])

    @property
    def k(self):
        return self.column("k").astype(int)

    @property
    def objective(self):
        return self.column("obj").astype(float)

    @property
    def gap(self):
        return self.column("gap").astype(float)

    @property
    def step_norm(self):
        return self.column("step_norm").astype(float)

    @property
    def alpha(self):
        return self.column("alpha").astype(float)

    @property
    def step_size(self):
        return self.column("lambda").astype(float)

    @property
    def energy(self):
        return self.column("energy").astype(float)

    @property
    def restart(self):
        return self.column("restart").astype(bool)

    @property
    def switch(self):
        return self.column("switch").astype(bool)

    @property
    def snapshot_k(self):
        """Iteration indices of the stored snapshots."""
        return np.asarray(self._snapshots_k, dtype=int)

    @property
    def snapshot_x(self):
        """Stored iterates x^k, shape (n_snapshots, n)."""
        return np.asarray(self._snapshots_x)

    @property
    def snapshot_y(self):
        """Stored extrapolated points y^k, shape (n_snapshots, n)."""
        return np.asarray(self._snapshots_y)

    @property
    def has_dense_snapshots(self):
        """Whether every recorded iteration has a snapshot."""
        return (len(self._snapshots_k) == len(self) and
                np.array_equal(self.snapshot_k, self.k))

    def iterations_to(self, threshold):
        """
        First iteration with gap <= threshold.

        Parameters
        ----------
        threshold : float

        Returns
        -------
        k : int or None
            None if the threshold is never reached.
        """
        hits = np.flatnonzero(self.gap <= threshold)
        return int(self.k[hits[0]]) if hits.size else None

    def to_frame(self):
        """
        Trace rows as a pandas DataFrame.

        Returns
        -------
        frame : pandas.DataFrame
        """
        return pd.DataFrame(self._rows, columns=TRACE_COLUMNS)

    @classmethod
    def from_frame(cls, frame, summary=None):
        """
        Build a trace from a DataFrame with the trace columns.

        Parameters
        ----------
        frame : pandas.DataFrame

        summary : dict or None (default=None)

        Returns
        -------
        trace : SolverTrace
        """
        missing = [c for c in TRACE_COLUMNS if c not in frame.columns]
        if missing:
            raise ValueError("Missing trace columns {}.".format(missing))

        summary = dict(summary or {})
        trace = cls(algorithm=summary.get("algorithm", "ifbs"),
                    schedule=summary.get("schedule"),
                    f_ref=summary.get("f_ref"),
                    snapshot_stride=summary.get("snapshot_stride"))

        for column in TRACE_COLUMNS:
            trace._rows[column] = frame[column].tolist()

        trace.summary = summary
        return trace

    def to_csv(self, path):
        """Write the trace rows to CSV with 17 significant digits."""
        self.to_frame().to_csv(path, index=False, float_format="%.17g",
                               na_rep="nan")

    @classmethod
    def from_csv(cls, path, summary=None):
        """Read trace rows written by :meth:`to_csv`."""
        return cls.from_frame(pd.read_csv(path), summary)

    def to_json(self, path):
        """Write the summary to JSON, without the wall-clock ``time`` key."""
        summary = {key: value for key, value in self.summary.items()
                   if key != "time"}
        with open(path, "w") as f:
            json.dump(summary, f, indent=2, sort_keys=True)

    def save_snapshots(self, path):
        """Write the snapshots to a numpy ``.npz`` file."""
        kwargs = {"k": self.snapshot_k, "x": self.snapshot_x,
                  "y": self.snapshot_y}
        if self.x_final is not None:
            kwargs["x_final"] = self.x_final
        np.savez(path, **kwargs)

    def load_snapshots(self, path):
        """Read snapshots written by :meth:`save_snapshots`."""
        with np.load(path) as data:
            self._snapshots_k = data["k"].tolist()
            self._snapshots_x = list(data["x"])
            self._snapshots_y = list(data["y"])
            if "x_final" in data:
                self.x_final = data["x_final"]


def _check_parameters(alpha, step_size):
    if not isinstance(alpha, numbers.Number) or not 0 <= alpha <= 1:
        raise ValueError("alpha must be a value in [0, 1]; got {}."
                         .format(alpha))

    if not isinstance(step_size, numbers.Number) or not (
            np.isfinite(step_size) and step_size > 0):
        raise ValueError("step_size must be positive; got {}."
                         .format(step_size))


def _check_finite(state, *vectors):
    for v in vectors:
        if not np.all(np.isfinite(v)):
            raise NumericalError("Non-finite iterate at k={}."
                                 .format(state.k + 1), k=state.k + 1)


def ifbs_step(problem, state, alpha, step_size):
    r"""
    One inertial forward-backward step.

    .. math::

        y^{k+1} = x^k + \alpha(x^k - x^{k-1}), \quad
        x^{k+1} = \mathrm{prox}_{\lambda\rho\|\cdot\|_1}
        (y^{k+1} - \lambda \nabla f(y^{k+1})).

    Parameters
    ----------
    problem : CompositeProblem

    state : SolverState
        State at iteration k.

    alpha : float
        Momentum parameter in [0, 1].

    step_size : float
        Step size, positive.

    Returns
    -------
    state : SolverState
        State at iteration k + 1.
    """
    _check_parameters(alpha, step_size)

    y = state.x_curr + alpha * (state.x_curr - state.x_prev)
    _check_finite(state, y)
    x = prox_l1(y - step_size * problem.gradient_smooth(y),
                step_size * problem.rho)
    _check_finite(state, x)

    return SolverState(x, state.x_curr, y, state.k + 1, alpha, step_size)


def sipm_step(problem, state, alpha, step_size):
    r"""
    One step of the splitting inertial proximal method. The gradient is
    evaluated at :math:`x^k`:

    .. math::

        x^{k+1} = \mathrm{prox}_{\lambda\rho\|\cdot\|_1}
        (x^k - \lambda\nabla f(x^k) + \alpha(x^k - x^{k-1})).

    The recorded extrapolated point is
    :math:`y^{k+1} = x^k + \alpha(x^k - x^{k-1})`.

    Parameters
    ----------
    problem : CompositeProblem

    state : SolverState
        State at iteration k.

    alpha : float
        Momentum parameter in [0, 1].

    step_size : float
        Step size, positive.

    Returns
    -------
    state : SolverState
        State at iteration k + 1.
    """
    _check_parameters(alpha, step_size)

    x_curr = state.x_curr
    momentum = alpha * (x_curr - state.x_prev)
    y = x_curr + momentum
    _check_finite(state, y)
    x = prox_l1(x_curr - step_size * problem.gradient_smooth(x_curr) +
                momentum, step_size * problem.rho)
    _check_finite(state, x)

    return SolverState(x, x_curr, y, state.k + 1, alpha, step_size)


def lyapunov_energy(problem, state, alpha, step_size):
    r"""
    Discrete energy
    :math:`E_k = \frac{\alpha_k}{2\lambda_k}\|x^k - x^{k-1}\|^2 + F(x^k)`.

    Parameters
    ----------
    problem : CompositeProblem

    state : SolverState

    alpha : float
        Momentum parameter alpha_k in [0, 1].

    step_size : float
        Step size lambda_k, positive.

    Returns
    -------
    energy : float
    """
    _check_parameters(alpha, step_size)
    delta = state.delta

    return alpha / (2.0 * step_size) * float(delta @ delta) + (
        problem.objective(state.x_curr))


def fixed_point_residual(problem, x, step_size):
    r"""
    Forward-backward fixed point residual
    :math:`\|x - \mathrm{prox}_{\lambda\rho\|\cdot\|_1}
    (x - \lambda\nabla f(x))\|`.

    Parameters
    ----------
    problem : CompositeProblem

    x : array-like, shape = (n,)

    step_size : float

    Returns
    -------
    residual : float
    """
    x = check_vector(x, "x", problem.dimension)
    p = prox_l1(x - step_size * problem.gradient_smooth(x),
                step_size * problem.rho)
    return float(np.linalg.norm(x - p))


def run(problem, schedule, x0=None, algo="ifbs", termination=None,
        f_ref=None, snapshot_stride=None, restart_test="gradient"):
    """
    Run an inertial method from x^1 = x^0 = x0.

    At each recorded iteration k the schedule emits (alpha_k, lambda_k),
    the row of k is recorded, the termination criteria are checked and,
    unless terminated, the iterate x^{k+1} is computed.

    Parameters
    ----------
    problem : CompositeProblem

    schedule : Schedule
        A fresh schedule. Its default step size is bound to 1/L.

    x0 : array-like, shape = (n,) or None (default=None)
        Initial point. If None, zeros.

    algo : str (default="ifbs")
        "ifbs" (gradient at the extrapolated point) or "sipm" (gradient at
        the current iterate).

    termination : TerminationRule or None (default=None)
        Stopping criteria. If None, ``TerminationRule()``.

    f_ref : float or None (default=None)
        Reference objective value for the gap column and ``target_gap``.

    snapshot_stride : int or None (default=None)
        Stride of stored iterates. None stores none.

    restart_test : str (default="gradient")
        Restart signal fed to the schedule: "gradient" uses
        <y^{k+1} - x^{k+1}, x^{k+1} - x^k> > 0 and "objective" uses
        F(x^{k+1}) > F(x^k).

    Returns
    -------
    trace : SolverTrace
    """
    if not isinstance(problem, CompositeProblem):
        raise TypeError("problem is not an instance inherited from "
                        "CompositeProblem.")

    if not isinstance(schedule, Schedule):
        raise TypeError("schedule is not an instance inherited from "
                        "Schedule.")

    if algo not in _ALGORITHMS:
        raise ValueError("Algorithm '{}' is not valid. Available algorithms "
                         "are {}.".format(algo, _ALGORITHMS))

    if restart_test not in _RESTART_TESTS:
        raise ValueError("Restart test '{}' is not valid. Available tests "
                         "are {}.".format(restart_test, _RESTART_TESTS))

    if not schedule.is_fresh:
        raise ValueError("schedule has already emitted parameters; call "
                         "reset() before reusing it.")

    if termination is None:
        termination = TerminationRule()
    elif not isinstance(termination, TerminationRule):
        raise TypeError("termination must be an instance of "
                        "TerminationRule.")

    if termination.target_gap is not None and f_ref is None:
        raise ValueError("target_gap requires a reference value f_ref.")

    n = problem.dimension
    x0 = np.zeros(n) if x0 is None else check_vector(x0, "x0", n)

    schedule.bind(problem.lipschitz_constant)
    step = ifbs_step if algo == "ifbs" else sipm_step

    trace = SolverTrace(algorithm=algo, schedule=schedule.name, f_ref=f_ref,
                        snapshot_stride=snapshot_stride)

    logger.info("Run %s with schedule %s, max_iter=%d.", algo, schedule.name,
                termination.max_iter)

    time_init = time.perf_counter()

    state = SolverState.initial(x0)
    obj = problem.objective(x0)
    feedback = False
    n_restarts = 0
    reason = _REASON_MAX_ITER

    for k in range(1, termination.max_iter + 1):
        alpha, step_size = schedule.next_params(k, feedback, state.x_curr)

        delta = state.delta
        step_norm = float(np.linalg.norm(delta))
        energy = alpha / (2.0 * step_size) * step_norm ** 2 + obj

        trace.append(k, obj, step_norm, alpha, step_size, energy,
                     restart=feedback, switch=schedule.switch_event)
        if trace.wants_snapshot(k):
            trace.add_snapshot(k, state.x_curr, state.y_curr)

        n_restarts += int(feedback)

        if (termination.target_gap is not None and
                obj - f_ref <= termination.target_gap):
            reason = _REASON_TARGET_GAP
            break

        if (termination.step_tol is not None and k >= 2 and
                step_norm <= termination.step_tol):
            reason = _REASON_STEP_TOL
            break

        if k == termination.max_iter:
            break

        try:
            state_next = step(problem, state, alpha, step_size)
        except NumericalError as e:
            _finalize(trace, state, obj, _REASON_ABORTED, n_restarts,
                      time_init, str(e))
            e.trace = trace
            raise

        obj_next = problem.objective(state_next.x_curr)
        if not np.isfinite(obj_next):
            _finalize(trace, state, obj, _REASON_ABORTED, n_restarts,
                      time_init, "Non-finite objective at k={}.".format(k + 1))
            raise NumericalError("Non-finite objective at k={}."
                                 .format(k + 1), k=k + 1, trace=trace)

        if restart_test == "gradient":
            feedback = restart_signal(state_next.y_curr, state_next.x_curr,
                                      state.x_curr)
        else:
            feedback = obj_next > obj

        state = state_next
        obj = obj_next

    _finalize(trace, state, obj, reason, n_restarts, time_init)

    logger.info("Run %s terminated after %d iterations (%s), objective "
                "%.12g.", algo, len(trace), reason, obj)

    return trace


def _finalize(trace, state, obj, reason, n_restarts, time_init,
              message=None):
    switches = trace.k[trace.switch] if len(trace) else []

    trace.x_final = state.x_curr.copy()
    trace.summary = {
        "algorithm": trace.algorithm,
        "schedule": trace.schedule,
        "n_iter": len(trace),
        "final_objective": float(obj) if len(trace) else None,
        "final_gap": (float(obj - trace.f_ref) if len(trace) and
                      trace.f_ref is not None else None),
        "f_ref": trace.f_ref,
        "reason": reason if len(trace) else "empty",
        "status": "aborted" if reason == _REASON_ABORTED else "ok",
        "message": message,
        "n_restarts": int(n_restarts),
        "switch_k": int(switches[0]) if len(switches) else None,
        "snapshot_stride": trace.snapshot_stride,
        "time": time.perf_counter() - time_init}
