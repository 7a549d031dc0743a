"""
Momentum and step size schedules for inertial forward-backward splitting.
"""

# Copyright (C) 2026 ifbs developers

import copy
import logging
import numbers

from abc import ABCMeta
from abc import abstractmethod
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import field

import numpy as np

from .._lib.linalg import check_matrix
from .._lib.linalg import check_vector
from .._lib.linalg import smallest_restricted_eigenvalue


logger = logging.getLogger(__name__)


_GUARANTEE_CONVERGENCE = "weak convergence of iterates"
_GUARANTEE_BOUNDS = "finite identification with explicit bounds"
_GUARANTEE_NO_BOUNDS = "finite identification without explicit bounds"
_GUARANTEE_RATE = "O(1/k^2) objective rate"

_VERDICT_ANALYTIC = "analytic"
_VERDICT_HORIZON = "horizon-only"

# relative slack when comparing step sizes against 1/L
_STEP_RTOL = 1e-12


def optimal_momentum(l_E, step_size):
    r"""
    Locally optimal constant momentum
    :math:`\alpha = (1 - \sqrt{l_E\lambda}) / (1 + \sqrt{l_E\lambda})`.

    Parameters
    ----------
    l_E : float
        Strong convexity parameter of the local problem, l_E >= 0.

    step_size : float
        Step size, step_size > 0.

    Returns
    -------
    alpha : float
        Momentum parameter in [0, 1].
    """
    if not isinstance(l_E, numbers.Number) or l_E < 0:
        raise ValueError("l_E must be a value >= 0; got {}.".format(l_E))

    if not isinstance(step_size, numbers.Number) or step_size <= 0:
        raise ValueError("step_size must be positive; got {}."
                         .format(step_size))

    product = l_E * step_size
    if product > 1.0 + _STEP_RTOL:
        raise ValueError("l_E * step_size must be <= 1; got {}. Check the "
                         "estimates of L and l_E.".format(product))

    root = np.sqrt(min(product, 1.0))
    return float((1.0 - root) / (1.0 + root))


def restart_signal(y_next, x_next, x_curr):
    r"""
    Gradient-based adaptive restart test
    :math:`\langle y^{k+1} - x^{k+1}, x^{k+1} - x^k \rangle > 0`.

    Parameters
    ----------
    y_next : array-like, shape = (n,)

    x_next : array-like, shape = (n,)

    x_curr : array-like, shape = (n,)

    Returns
    -------
    restart : bool
    """
    y_next = check_vector(y_next, "y_next")
    x_next = check_vector(x_next, "x_next", y_next.size)
    x_curr = check_vector(x_curr, "x_curr", y_next.size)

    return bool((y_next - x_next) @ (x_next - x_curr) > 0)


class Schedule(metaclass=ABCMeta):
    """
    Joint momentum and step size policy.

    A schedule emits one pair :math:`(\\alpha_k, \\lambda_k)` per iteration
    through :meth:`next_params`, called with consecutive k = 1, 2, ...

    Parameters
    ----------
    step_size : float, array-like, callable or None (default=None)
        Step size rule. A float gives a constant step, an array gives the
        sequence lambda_1, lambda_2, ... (the last value is held), and a
        callable is evaluated as ``step_size(k)``. If None, the step is 1/L
        with L given by :meth:`bind`.
    """
    name = None
    uses_feedback = False
    supports_restart = False
    accelerated = False

    def __init__(self, step_size=None):
        if step_size is not None and not callable(step_size):
            if isinstance(step_size, numbers.Number):
                if not np.isfinite(step_size) or step_size <= 0:
                    raise ValueError("step_size must be positive; got {}."
                                     .format(step_size))
            else:
                step_size = check_vector(step_size, "step_size")
                if np.any(step_size <= 0):
                    raise ValueError("step_size entries must be positive.")

        self.step_size = step_size

        self._lipschitz_constant = None
        self._k = 0
        self._switch_event = False

    def bind(self, lipschitz_constant):
        """
        Set the Lipschitz constant used by the default step size 1/L.

        Parameters
        ----------
        lipschitz_constant : float

        Returns
        -------
        self : object
        """
        if lipschitz_constant <= 0:
            raise ValueError("lipschitz_constant must be positive; got {}."
                             .format(lipschitz_constant))

        self._lipschitz_constant = float(lipschitz_constant)
        return self

    def reset(self):
        """Reset the internal state to k = 1."""
        self._k = 0
        self._switch_event = False

    @property
    def is_fresh(self):
        """True if no parameters have been emitted since the last reset."""
        return self._k == 0

    @property
    def switch_event(self):
        """True if the schedule switched regime at the last emitted k."""
        return self._switch_event

    def step_size_at(self, k):
        """
        Step size lambda_k.

        Parameters
        ----------
        k : int
            Iteration index, k >= 1.

        Returns
        -------
        step_size : float
        """
        if self.step_size is None:
            if self._lipschitz_constant is None:
                raise ValueError("step_size is None and no Lipschitz constant "
                                 "is bound; call bind(L) first.")
            return 1.0 / self._lipschitz_constant
        elif callable(self.step_size):
            value = float(self.step_size(k))
            if not np.isfinite(value) or value <= 0:
                raise ValueError("step_size({}) must be positive; got {}."
                                 .format(k, value))
            return value
        elif isinstance(self.step_size, np.ndarray):
            return float(self.step_size[min(k, len(self.step_size)) - 1])
        else:
            return float(self.step_size)

    def next_params(self, k, feedback=False, iterate=None):
        """
        Emit the momentum and step size of iteration k.

        Parameters
        ----------
        k : int
            Iteration index. Must equal the previous index plus one.

        feedback : bool (default=False)
            Restart signal observed when producing the current iterate.

        iterate : array-like or None (default=None)
            Current iterate x^k. Used by schedules that adapt to it.

        Returns
        -------
        alpha : float
            Momentum parameter in [0, 1].

        step_size : float
            Step size, positive.
        """
        if k != self._k + 1:
            raise ValueError("Iteration indices must be consecutive: "
                             "expected k={}; got {}.".format(self._k + 1, k))

        self._k = k
        self._switch_event = False

        step_size = self.step_size_at(k)
        alpha = float(self._next_alpha(k, feedback, iterate, step_size))

        if not 0 <= alpha <= 1:
            raise ValueError("{} emitted alpha={} outside [0, 1]."
                             .format(type(self).__name__, alpha))

        return alpha, step_size

    def restart(self):
        """Restart the momentum recursion at the next emitted k."""
        raise TypeError("{} does not support restarts."
                        .format(type(self).__name__))

    @abstractmethod
    def _next_alpha(self, k, feedback, iterate, step_size):
        """Momentum parameter of iteration k."""

    @abstractmethod
    def limsup_alpha(self):
        """
        Analytic upper bound of limsup alpha_k.

        Returns
        -------
        value : float or None
            Upper bound of limsup alpha_k, None if unavailable.

        analytic : bool
            Whether ``value`` holds for every run, independent of feedback.
        """


class ConstantMomentum(Schedule):
    """
    Constant momentum schedule. ``alpha=0`` is ISTA.

    Parameters
    ----------
    alpha : float (default=0.0)
        Momentum parameter in [0, 1].

    step_size : float, array-like, callable or None (default=None)
        Step size rule, see ``Schedule``.
    """
    name = "constant"

    def __init__(self, alpha=0.0, step_size=None):
        super().__init__(step_size)

        if not isinstance(alpha, numbers.Number) or not 0 <= alpha <= 1:
            raise ValueError("alpha must be a value in [0, 1]; got {}."
                             .format(alpha))

        self.alpha = float(alpha)

    def _next_alpha(self, k, feedback, iterate, step_size):
        return self.alpha

    def limsup_alpha(self):
        return self.alpha, True


class _FistaLike(Schedule):
    """
    Momentum alpha_k = (t_k - 1) / t_{k+1} driven by a sequence t_k with
    t_1 = 1. The sequence index restarts from 1 on :meth:`restart`.
    """
    supports_restart = True
    accelerated = True

    def __init__(self, step_size=None):
        super().__init__(step_size)

        self._j = 1
        self._t = 1.0
        self._restart = False

    def reset(self):
        super().reset()
        self._j = 1
        self._t = 1.0
        self._restart = False

    def restart(self):
        self._restart = True

    @property
    def t(self):
        """Current value t_k of the recursion."""
        return self._t

    @abstractmethod
    def _next_t(self, j, t):
        """t_{j+1} given t_j."""

    def _next_alpha(self, k, feedback, iterate, step_size):
        if self._restart:
            self._j = 1
            self._t = 1.0
            self._restart = False

        t_next = self._next_t(self._j, self._t)
        alpha = (self._t - 1.0) / t_next

        self._j += 1
        self._t = t_next

        return alpha

    def limsup_alpha(self):
        return 1.0, True


class FistaBT(_FistaLike):
    r"""
    Beck-Teboulle momentum, :math:`t_{k+1} = (1 + \sqrt{4t_k^2 + 1}) / 2`.

    Parameters
    ----------
    step_size : float, array-like, callable or None (default=None)
        Step size rule, see ``Schedule``.
    """
    name = "fista-bt"

    def _next_t(self, j, t):
        return 0.5 * (1.0 + np.sqrt(4.0 * t * t + 1.0))


class ChambolleDossal(_FistaLike):
    """
    Chambolle-Dossal momentum, :math:`t_{k+1} = (k + a - 1) / a` for
    k >= 1 with t_1 = 1.

    Parameters
    ----------
    a : float (default=3.0)
        Parameter of the recursion, a > 2.

    step_size : float, array-like, callable or None (default=None)
        Step size rule, see ``Schedule``.
    """
    name = "chambolle-dossal"

    def __init__(self, a=3.0, step_size=None):
        super().__init__(step_size)

        if not isinstance(a, numbers.Number) or a <= 2:
            raise ValueError("a must be > 2; got {}.".format(a))

        self.a = float(a)

    def _next_t(self, j, t):
        return (j + self.a - 1.0) / self.a


class Capped(Schedule):
    """
    Momentum of an inner schedule capped at ``alpha_max``.

    The step size rule is the inner schedule's.

    Parameters
    ----------
    inner : Schedule
        Inner schedule.

    alpha_max : float (default=0.99)
        Cap, a value in [0, 1].
    """
    name = "capped"

    def __init__(self, inner, alpha_max=0.99):
        if not isinstance(inner, Schedule):
            raise TypeError("inner is not an instance inherited from "
                            "Schedule.")

        if not isinstance(alpha_max, numbers.Number) or not (
                0 <= alpha_max <= 1):
            raise ValueError("alpha_max must be a value in [0, 1]; got {}."
                             .format(alpha_max))

        super().__init__(None)
        self.inner = inner
        self.alpha_max = float(alpha_max)

        self.uses_feedback = inner.uses_feedback
        self.supports_restart = inner.supports_restart
        self.accelerated = inner.accelerated

    def bind(self, lipschitz_constant):
        super().bind(lipschitz_constant)
        self.inner.bind(lipschitz_constant)
        return self

    def reset(self):
        super().reset()
        self.inner.reset()

    def restart(self):
        self.inner.restart()

    def step_size_at(self, k):
        return self.inner.step_size_at(k)

    def _next_alpha(self, k, feedback, iterate, step_size):
        alpha, _ = self.inner.next_params(k, feedback, iterate)
        self._switch_event = self.inner.switch_event
        return min(alpha, self.alpha_max)

    def limsup_alpha(self):
        value, analytic = self.inner.limsup_alpha()
        if not analytic or value is None:
            return self.alpha_max, True
        return min(value, self.alpha_max), True


class AdaptiveRestart(Schedule):
    """
    Adaptive restart: the inner momentum recursion is restarted whenever the
    restart signal fires, which gives alpha_k = 0 at that iteration.

    Parameters
    ----------
    inner : Schedule
        Inner schedule supporting restarts, e.g. ``FistaBT``.
    """
    name = "fista-adre"
    uses_feedback = True

    def __init__(self, inner=None):
        if inner is None:
            inner = FistaBT()

        if not isinstance(inner, Schedule):
            raise TypeError("inner is not an instance inherited from "
                            "Schedule.")

        if not inner.supports_restart:
            raise ValueError("inner schedule {} does not support restarts."
                             .format(type(inner).__name__))

        super().__init__(None)
        self.inner = inner

    def bind(self, lipschitz_constant):
        super().bind(lipschitz_constant)
        self.inner.bind(lipschitz_constant)
        return self

    def reset(self):
        super().reset()
        self.inner.reset()

    def step_size_at(self, k):
        return self.inner.step_size_at(k)

    def _next_alpha(self, k, feedback, iterate, step_size):
        if feedback:
            self.inner.restart()

        alpha, _ = self.inner.next_params(k, False, iterate)
        return alpha

    def limsup_alpha(self):
        return None, False


class SupportMomentumEstimator(object):
    """
    Locally optimal momentum estimated on the support of the current
    iterate, using the smallest eigenvalue of the restricted Gram matrix.

    Parameters
    ----------
    A : array-like, shape = (m, n)
        Design matrix.

    max_size : int (default=2000)
        Largest support size for which the eigenvalue is computed.

    Attributes
    ----------
    support_ : numpy.ndarray or None
        Support used by the last estimate.

    l_E_ : float or None
        Smallest restricted eigenvalue of the last estimate.
    """
    def __init__(self, A, max_size=2000):
        self.A = check_matrix(A)
        self.max_size = max_size

        self.support_ = None
        self.l_E_ = None

    def __call__(self, x, step_size):
        """
        Momentum for iterate x.

        Parameters
        ----------
        x : array-like, shape = (n,)
            Current iterate.

        step_size : float
            Step size.

        Returns
        -------
        alpha : float
        """
        x = check_vector(x, "x", self.A.shape[1])
        support = np.flatnonzero(x)

        if support.size == 0:
            raise ValueError("Iterate has empty support.")

        l_E = smallest_restricted_eigenvalue(self.A, support, self.max_size)

        self.support_ = support
        self.l_E_ = l_E

        # estimates of L and l_E may be inconsistent when L is approximate
        product = l_E * step_size
        if product > 1:
            logger.warning("l_E * step_size = %.6g > 1; clipped to 1.",
                           product)
            l_E = 1.0 / step_size

        return optimal_momentum(l_E, step_size)


class AdOptSwitch(Schedule):
    """
    Delegate to an inner schedule until the first restart signal, then
    switch to a constant locally optimal momentum estimated once.

    If the estimate is unavailable (empty support or support larger than
    the estimator cap), the schedule falls back to adaptive restarts of the
    inner schedule.

    Parameters
    ----------
    inner : Schedule
        Inner schedule, e.g. ``FistaBT``.

    estimator : callable
        Called as ``estimator(x, step_size)`` at the switch; returns alpha.
        See ``SupportMomentumEstimator``.

    Attributes
    ----------
    switched_at_ : int or None
        Iteration at which the schedule switched.

    alpha_opt_ : float or None
        Momentum emitted after the switch.

    fallback_ : bool
        Whether the estimator failed and adaptive restarts are used.
    """
    name = "fista-adopt"
    uses_feedback = True

    def __init__(self, inner, estimator):
        if not isinstance(inner, Schedule):
            raise TypeError("inner is not an instance inherited from "
                            "Schedule.")

        if not callable(estimator):
            raise TypeError("estimator must be callable.")

        super().__init__(None)
        self.inner = inner
        self.estimator = estimator

        self.switched_at_ = None
        self.alpha_opt_ = None
        self.fallback_ = False

    def bind(self, lipschitz_constant):
        super().bind(lipschitz_constant)
        self.inner.bind(lipschitz_constant)
        return self

    def reset(self):
        super().reset()
        self.inner.reset()
        self.switched_at_ = None
        self.alpha_opt_ = None
        self.fallback_ = False

    def step_size_at(self, k):
        return self.inner.step_size_at(k)

    def _next_alpha(self, k, feedback, iterate, step_size):
        if self.alpha_opt_ is not None:
            return self.alpha_opt_

        if feedback and not self.fallback_:
            try:
                if iterate is None:
                    raise ValueError("no iterate supplied to the schedule.")
                alpha = self.estimator(iterate, step_size)
            except ValueError as e:
                if not self.inner.supports_restart:
                    raise
                logger.warning("Momentum estimate unavailable at k=%d (%s); "
                               "falling back to adaptive restart.", k, e)
                self.fallback_ = True
            else:
                self.alpha_opt_ = float(alpha)
                self.switched_at_ = k
                self._switch_event = True
                logger.info("Switched to constant momentum alpha=%.6g at "
                            "k=%d.", self.alpha_opt_, k)
                return self.alpha_opt_

        if feedback and self.fallback_:
            self.inner.restart()

        alpha, _ = self.inner.next_params(k, False, iterate)
        return alpha

    def limsup_alpha(self):
        return None, False


@dataclass
class ValidityReport:
    """
    Parameter validity report of a schedule.

    Attributes
    ----------
    convergence_ok : bool
        Whether the step size and momentum conditions for convergence of
        the iterates hold. True iff ``reasons`` is empty.

    reasons : list
        Violated conditions.

    guarantees : list
        Applicable results.

    verdict : str
        "analytic" when limsup alpha is certified for every run,
        "horizon-only" when the checks only cover the simulated horizon.

    alpha_band : tuple
        (min alpha_k, max alpha_k, alpha_1) over the horizon.

    step_size_band : tuple
        (min lambda_k, max lambda_k, lambda_1) over the horizon.

    sipm_ok : bool
        Whether the conditions of the inertial proximal method hold.

    sipm_reasons : list
        Violated conditions of the inertial proximal method.
    """
    convergence_ok: bool
    reasons: list = field(default_factory=list)
    guarantees: list = field(default_factory=list)
    verdict: str = _VERDICT_ANALYTIC
    alpha_band: tuple = (0.0, 0.0, 0.0)
    step_size_band: tuple = (0.0, 0.0, 0.0)
    sipm_ok: bool = False
    sipm_reasons: list = field(default_factory=list)

    def to_dict(self):
        return asdict(self)


def _simulate(schedule, horizon, lipschitz_constant):
    schedule = copy.deepcopy(schedule)
    schedule.reset()
    schedule.bind(lipschitz_constant)

    params = [schedule.next_params(k) for k in range(1, horizon + 1)]
    alphas, step_sizes = map(np.asarray, zip(*params))

    return schedule, alphas, step_sizes


def validate(schedule, horizon, lipschitz_constant):
    """
    Check a schedule against the parameter conditions for convergence,
    finite identification and the inertial proximal method.

    The schedule is simulated without restart feedback over ``horizon``
    iterations on a copy; the given schedule is not modified.

    Parameters
    ----------
    schedule : Schedule
        Schedule to be checked.

    horizon : int
        Number of simulated iterations, horizon >= 1.

    lipschitz_constant : float
        Lipschitz constant L of the smooth gradient.

    Returns
    -------
    report : ValidityReport
    """
    if not isinstance(schedule, Schedule):
        raise TypeError("schedule is not an instance inherited from "
                        "Schedule.")

    if not isinstance(horizon, numbers.Integral) or horizon < 1:
        raise ValueError("horizon must be a positive integer; got {}."
                         .format(horizon))

    if lipschitz_constant <= 0:
        raise ValueError("lipschitz_constant must be positive; got {}."
                         .format(lipschitz_constant))

    L = float(lipschitz_constant)
    simulated, alphas, step_sizes = _simulate(schedule, horizon, L)

    reasons = []
    if np.any(np.diff(step_sizes) < 0):
        reasons.append("lambda_k not nondecreasing")

    if np.any(step_sizes > (1.0 + _STEP_RTOL) / L):
        reasons.append("lambda_k > 1/L")

    limsup, analytic = simulated.limsup_alpha()
    if analytic:
        verdict = _VERDICT_ANALYTIC
        if limsup >= 1:
            reasons.append("limsup alpha = 1")
    else:
        verdict = _VERDICT_HORIZON
        reasons.append("limsup alpha < 1 not certified for a feedback-driven "
                       "schedule")

    convergence_ok = not reasons

    alpha_band = (float(alphas.min()), float(alphas.max()), float(alphas[0]))
    step_size_band = (float(step_sizes.min()), float(step_sizes.max()),
                      float(step_sizes[0]))

    guarantees = []
    if convergence_ok:
        guarantees.append(_GUARANTEE_CONVERGENCE)
        if alpha_band[0] > 0:
            guarantees.append(_GUARANTEE_BOUNDS)
        else:
            guarantees.append(_GUARANTEE_NO_BOUNDS)
    elif simulated.accelerated and "lambda_k > 1/L" not in reasons:
        guarantees.append(_GUARANTEE_NO_BOUNDS)
        if "lambda_k not nondecreasing" not in reasons:
            guarantees.append(_GUARANTEE_RATE)

    sipm_reasons = []
    if alpha_band[1] >= 1.0 / 3.0:
        sipm_reasons.append("alpha_k >= 1/3")

    if step_size_band[1] >= 2.0 / L:
        sipm_reasons.append("lambda_k not bounded away from 2/L")

    if np.any(np.diff(alphas) < 0):
        sipm_reasons.append("alpha_k not nondecreasing")

    return ValidityReport(convergence_ok=convergence_ok, reasons=reasons,
                          guarantees=guarantees, verdict=verdict,
                          alpha_band=alpha_band,
                          step_size_band=step_size_band,
                          sipm_ok=not sipm_reasons, sipm_reasons=sipm_reasons)
