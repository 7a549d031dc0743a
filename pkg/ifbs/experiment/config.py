"""
Experiment configuration files and schedule specifications.
"""

# Copyright (C) 2026 ifbs developers

import configparser
import numbers

from dataclasses import dataclass

from ..problems import generate_instance
from ..problems import read_instance
from ..problems import read_instance_csv
from ..solvers import AdaptiveRestart
from ..solvers import AdOptSwitch
from ..solvers import Capped
from ..solvers import ChambolleDossal
from ..solvers import ConstantMomentum
from ..solvers import FistaBT
from ..solvers import optimal_momentum
from ..solvers import SupportMomentumEstimator


DEFAULT_THRESHOLDS = (1e-2, 1e-4, 1e-6, 1e-8, 1e-10)

_ALGORITHMS = ("ifbs", "sipm")
_RESTART_TESTS = ("gradient", "objective")

# schedule name -> allowed keys, "step" is accepted by every schedule
_SCHEDULE_KEYS = {
    "ista": (),
    "constant": ("alpha",),
    "fista-bt": (),
    "chambolle-dossal": ("a",),
    "capped": ("inner", "alpha_max"),
    "fista-adre": ("inner",),
    "fista-adopt": ("inner", "max_size"),
    "ifbs-opt": (),
    "ista-opt": (),
}

_INNER_SCHEDULES = ("fista-bt", "chambolle-dossal")


@dataclass
class AlgorithmSpec:
    """
    One run of an experiment.

    Attributes
    ----------
    label : str
        Run label, used for output file names.

    algo : str
        "ifbs" or "sipm".

    schedule : str
        Schedule specification, see :func:`parse_schedule`.

    max_iter : int
        Largest recorded iteration.

    target_gap : float or None
        Stop when the gap to the reference is <= target_gap.

    step_tol : float or None
        Stop when the step norm is <= step_tol.

    restart_test : str
        "gradient" or "objective".
    """
    label: str
    algo: str = "ifbs"
    schedule: str = "ista"
    max_iter: int = 10000
    target_gap: float = None
    step_tol: float = None
    restart_test: str = "gradient"

    def __post_init__(self):
        if self.algo not in _ALGORITHMS:
            raise ValueError("Algorithm '{}' is not valid. Available "
                             "algorithms are {}.".format(self.algo,
                                                         _ALGORITHMS))

        if self.restart_test not in _RESTART_TESTS:
            raise ValueError("Restart test '{}' is not valid. Available tests "
                             "are {}.".format(self.restart_test,
                                              _RESTART_TESTS))

        if not isinstance(self.max_iter, numbers.Integral) or (
                self.max_iter < 0):
            raise ValueError("max_iter must be a nonnegative integer; got {}."
                             .format(self.max_iter))

        _split_schedule(self.schedule)


@dataclass
class ExperimentConfig:
    """
    Experiment settings.

    The instance is read from ``path`` (binary container), from
    ``a_csv``/``b_csv``, or generated from ``m``, ``n``, ``sparsity``,
    ``std``, ``rho`` and ``seed``.

    Attributes
    ----------
    algorithms : list of AlgorithmSpec
        At least one run.

    name : str
        Experiment name.

    gap_tol : float
        Duality gap of the reference solve.

    output : str
        Output directory.

    snapshot_stride : int or None
        Stride of stored iterates. None selects 1 for n <= 500 and 10
        otherwise.

    n_jobs : int or None
        Number of worker processes. None runs sequentially.

    thresholds : tuple
        Gap thresholds of the comparison table.

    e_threshold : float
        Classification threshold of E.
    """
    algorithms: list
    name: str = "experiment"
    path: str = None
    a_csv: str = None
    b_csv: str = None
    m: int = None
    n: int = None
    sparsity: int = None
    std: float = 0.1
    rho: float = 1.0
    seed: int = None
    normalize: bool = False
    gap_tol: float = 1e-8
    output: str = "output"
    snapshot_stride: int = None
    n_jobs: int = None
    thresholds: tuple = DEFAULT_THRESHOLDS
    e_threshold: float = 1e-4

    def __post_init__(self):
        if not self.algorithms:
            raise ValueError("At least one algorithm is required.")

        labels = [spec.label for spec in self.algorithms]
        if len(set(labels)) != len(labels):
            raise ValueError("Algorithm labels must be unique; got {}."
                             .format(labels))

        if self.path is None and self.a_csv is None:
            missing = [key for key in ("m", "n", "sparsity", "seed")
                       if getattr(self, key) is None]
            if missing:
                raise ValueError("Generated instances require {}."
                                 .format(missing))

        if self.gap_tol <= 0:
            raise ValueError("gap_tol must be positive; got {}."
                             .format(self.gap_tol))

    def build_instance(self):
        """
        Load or generate the instance.

        Returns
        -------
        instance : L1LSInstance
        """
        if self.path is not None:
            instance = read_instance(self.path)
        elif self.a_csv is not None:
            if self.b_csv is None:
                raise ValueError("a_csv requires b_csv.")
            instance = read_instance_csv(self.a_csv, self.b_csv, self.rho)
        else:
            instance = generate_instance(self.m, self.n, self.sparsity,
                                         self.std, self.rho, self.seed)

        if self.normalize:
            instance = instance.normalize()

        return instance

    def resolve_snapshot_stride(self, n):
        """Snapshot stride for an instance with n variables."""
        if self.snapshot_stride is not None:
            return self.snapshot_stride
        return 1 if n <= 500 else 10


def _split_schedule(spec):
    if not isinstance(spec, str) or not spec.strip():
        raise ValueError("Schedule specification must be a nonempty string; "
                         "got {!r}.".format(spec))

    name, _, args = spec.strip().partition(":")
    name = name.strip()

    if name not in _SCHEDULE_KEYS:
        raise ValueError("Schedule '{}' is not valid. Available schedules "
                         "are {}.".format(name, list(_SCHEDULE_KEYS)))

    params = {}
    for item in filter(None, (s.strip() for s in args.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip()

        if not sep:
            raise ValueError("Schedule parameter '{}' must have the form "
                             "key=value.".format(item))

        allowed = _SCHEDULE_KEYS[name] + ("step",)
        if key not in allowed:
            raise ValueError("Parameter '{}' is not valid for schedule '{}'. "
                             "Available parameters are {}."
                             .format(key, name, list(allowed)))

        params[key] = value.strip()

    return name, params


def _inner_schedule(name, step_size):
    if name not in _INNER_SCHEDULES:
        raise ValueError("Inner schedule '{}' is not valid. Available inner "
                         "schedules are {}.".format(name, _INNER_SCHEDULES))

    if name == "fista-bt":
        return FistaBT(step_size)
    return ChambolleDossal(step_size=step_size)


def parse_schedule(spec, instance=None, l_E=None):
    """
    Build a schedule from a specification ``name[:key=value[,key=value]]``.

    Names and parameters:

    * ``ista``: no momentum.
    * ``constant``: ``alpha``.
    * ``fista-bt``: Beck-Teboulle momentum.
    * ``chambolle-dossal``: ``a`` (default 3).
    * ``capped``: ``inner`` (fista-bt or chambolle-dossal), ``alpha_max``
      (default 0.99).
    * ``fista-adre``: adaptive restart of ``inner`` (default fista-bt).
    * ``fista-adopt``: switch from ``inner`` (default fista-bt) to the
      locally optimal momentum at the first restart signal; ``max_size``
      caps the eigensolve (default 2000).
    * ``ifbs-opt``: constant locally optimal momentum, requires l_E.
    * ``ista-opt``: no momentum with step 2/(L + l_E), requires l_E.

    Every schedule accepts ``step``, the step size as a multiple of 1/L
    (default 1).

    Parameters
    ----------
    spec : str
        Schedule specification.

    instance : L1LSInstance or None (default=None)
        Instance, required by ``step``, ``fista-adopt``, ``ifbs-opt`` and
        ``ista-opt``.

    l_E : float or None (default=None)
        Local strong convexity, required by ``ifbs-opt`` and ``ista-opt``.

    Returns
    -------
    schedule : Schedule
    """
    name, params = _split_schedule(spec)

    def need_instance():
        if instance is None:
            raise ValueError("Schedule '{}' requires an instance."
                             .format(spec))
        return instance

    def need_l_E():
        if l_E is None:
            raise ValueError("Schedule '{}' requires l_E.".format(name))
        return l_E

    try:
        step_size = None
        if "step" in params:
            L = need_instance().lipschitz_constant
            step_size = float(params["step"]) / L

        if name == "ista":
            return ConstantMomentum(0.0, step_size)
        elif name == "constant":
            return ConstantMomentum(float(params.get("alpha", 0.0)),
                                    step_size)
        elif name == "fista-bt":
            return FistaBT(step_size)
        elif name == "chambolle-dossal":
            return ChambolleDossal(float(params.get("a", 3.0)), step_size)
        elif name == "capped":
            inner = _inner_schedule(params.get("inner", "fista-bt"),
                                    step_size)
            return Capped(inner, float(params.get("alpha_max", 0.99)))
        elif name == "fista-adre":
            inner = _inner_schedule(params.get("inner", "fista-bt"),
                                    step_size)
            return AdaptiveRestart(inner)
        elif name == "fista-adopt":
            inner = _inner_schedule(params.get("inner", "fista-bt"),
                                    step_size)
            estimator = SupportMomentumEstimator(
                need_instance().A, int(params.get("max_size", 2000)))
            return AdOptSwitch(inner, estimator)
        elif name == "ifbs-opt":
            L = need_instance().lipschitz_constant
            step = step_size if step_size is not None else 1.0 / L
            return ConstantMomentum(optimal_momentum(need_l_E(), step),
                                    step_size)
        else:
            L = need_instance().lipschitz_constant
            return ConstantMomentum(0.0, 2.0 / (L + need_l_E()))
    except (TypeError, ValueError) as e:
        raise ValueError("Invalid schedule specification '{}': {}"
                         .format(spec, e))


def _get(section, key, convert, default=None):
    if key not in section:
        return default

    value = section[key].strip()
    if value.lower() in ("", "none"):
        return None

    try:
        return convert(value)
    except ValueError:
        raise ValueError("Invalid value for '{}' in section [{}]; got {!r}."
                         .format(key, section.name, value))


def read_config(path):
    """
    Read an experiment configuration file.

    The file has an ``[instance]`` section, an ``[experiment]`` section and
    one ``[algorithm <label>]`` section per run. See the README for the keys.

    Parameters
    ----------
    path : str
        Configuration file path.

    Returns
    -------
    config : ExperimentConfig
    """
    parser = configparser.ConfigParser()
    with open(path) as f:
        parser.read_file(f)

    instance = parser["instance"] if parser.has_section("instance") else {}
    experiment = (parser["experiment"] if parser.has_section("experiment")
                  else {})

    algorithms = []
    for section_name in parser.sections():
        if not section_name.startswith("algorithm"):
            continue

        label = section_name[len("algorithm"):].strip()
        if not label:
            raise ValueError("Algorithm sections must be named "
                             "[algorithm <label>].")

        section = parser[section_name]
        algorithms.append(AlgorithmSpec(
            label=label,
            algo=_get(section, "algo", str, "ifbs"),
            schedule=_get(section, "schedule", str, "ista"),
            max_iter=_get(section, "max_iter", int, 10000),
            target_gap=_get(section, "target_gap", float),
            step_tol=_get(section, "step_tol", float),
            restart_test=_get(section, "restart_test", str, "gradient")))

    thresholds = _get(experiment, "thresholds",
                      lambda s: tuple(float(t) for t in s.split(",")),
                      DEFAULT_THRESHOLDS) if experiment else DEFAULT_THRESHOLDS

    def get_instance(key, convert, default=None):
        return _get(instance, key, convert, default) if instance else default

    def get_experiment(key, convert, default=None):
        return (_get(experiment, key, convert, default) if experiment
                else default)

    normalize = (instance.getboolean("normalize", fallback=False)
                 if instance else False)

    return ExperimentConfig(
        algorithms=algorithms,
        name=get_experiment("name", str, "experiment"),
        path=get_instance("path", str),
        a_csv=get_instance("a_csv", str),
        b_csv=get_instance("b_csv", str),
        m=get_instance("m", int),
        n=get_instance("n", int),
        sparsity=get_instance("sparsity", int),
        std=get_instance("std", float, 0.1),
        rho=get_instance("rho", float, 1.0),
        seed=get_instance("seed", int),
        normalize=normalize,
        gap_tol=get_experiment("gap_tol", float, 1e-8),
        output=get_experiment("output", str, "output"),
        snapshot_stride=get_experiment("snapshot_stride", int),
        n_jobs=get_experiment("n_jobs", int),
        thresholds=thresholds,
        e_threshold=get_experiment("e_threshold", float, 1e-4))
