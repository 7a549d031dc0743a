"""
Experiment comparison and configuration testing.
"""

# Copyright (C) 2026 ifbs developers
import json
import os

import numpy as np
import pandas as pd

from ifbs.analysis import reference_solve
from ifbs.experiment import AlgorithmSpec
from ifbs.experiment import analyze_trace
from ifbs.experiment import Experiment
from ifbs.experiment import ExperimentConfig
from ifbs.experiment import experiment_describe
from ifbs.experiment import experiment_summary
from ifbs.experiment import parse_schedule
from ifbs.experiment import read_config
from ifbs.problems import generate_instance
from ifbs.problems import L1LSInstance
from ifbs.solvers import AdaptiveRestart
from ifbs.solvers import AdOptSwitch
from ifbs.solvers import Capped
from ifbs.solvers import ChambolleDossal
from ifbs.solvers import ConstantMomentum
from ifbs.solvers import FistaBT
from ifbs.solvers import run
from ifbs.solvers import TerminationRule
from pytest import approx, raises


def _instance(seed=0):
    instance = generate_instance(30, 60, 5, random_state=seed)
    rho = 0.2 * np.abs(instance.A.T @ instance.b).max()
    return L1LSInstance(instance.A, instance.b, rho).normalize()


def _algorithms():
    return [
        AlgorithmSpec("ista", schedule="ista", max_iter=10000,
                      target_gap=1e-10),
        AlgorithmSpec("fista-bt", schedule="fista-bt", max_iter=10000,
                      target_gap=1e-10),
        AlgorithmSpec("fista-adre", schedule="fista-adre", max_iter=10000,
                      target_gap=1e-10),
        AlgorithmSpec("fista-adopt", schedule="fista-adopt", max_iter=10000,
                      target_gap=1e-10),
        AlgorithmSpec("ifbs-opt", schedule="ifbs-opt", max_iter=10000,
                      target_gap=1e-10)]


def _experiment(**kwargs):
    return Experiment("small", _instance(), _algorithms(), gap_tol=1e-12,
                      snapshot_stride=1, **kwargs)


def test_experiment_input():
    with raises(TypeError):
        Experiment("test", np.eye(3), _algorithms())

    with raises(ValueError):
        Experiment("test", _instance(), [])

    with raises(TypeError):
        Experiment("test", _instance(), ["ista"])

    with raises(ValueError):
        Experiment("test", _instance(), _algorithms(), n_jobs=0)


def test_experiment_not_run():
    experiment = _experiment()

    assert experiment.status == "ready"
    assert experiment.elapsed is None

    with raises(ValueError):
        experiment.comparison()


def test_experiment_context_manager():
    with _experiment() as experiment:
        experiment.run()

    assert experiment.status == "finished"
    assert experiment.elapsed > 0


def test_experiment_run():
    experiment = _experiment().run()

    assert experiment.status == "finished"
    assert experiment.reference_.duality_gap <= 1e-12
    assert experiment.l_E_ is not None and experiment.l_E_ > 0
    assert set(experiment.traces_) == {spec.label for spec in
                                       experiment.algorithms}

    comparison = experiment.comparison()
    assert comparison["thresholds"] == [1e-2, 1e-4, 1e-6, 1e-8, 1e-10]
    assert comparison["f_star"] == experiment.reference_.f_star

    for label, iterations in comparison["iterations"].items():
        reached = [k for k in iterations if k is not None]
        assert reached == sorted(reached)
        assert comparison["status"][label] == "ok"

    opt = comparison["iterations"]["ifbs-opt"][-1]
    assert opt is not None
    assert experiment.traces_["fista-adopt"].summary["label"] == "fista-adopt"


def test_experiment_summary():
    experiment = _experiment().run()
    df = experiment.summary()

    assert isinstance(df, pd.DataFrame)
    assert list(df.index) == [spec.label for spec in experiment.algorithms]
    assert "gap <= 1e-10" in df.columns
    assert "n_restarts" in df.columns

    with raises(TypeError):
        experiment_summary(object())


def test_experiment_describe(capsys):
    experiment = _experiment()
    experiment.describe()

    out = capsys.readouterr().out
    assert "Experiment: small" in out
    assert "30 x 60" in out
    assert "fista-adopt" in out

    with raises(TypeError):
        experiment_describe(object())


def test_experiment_save(tmp_path):
    experiment = _experiment().run()
    output = str(tmp_path / "out")
    experiment.save(output)

    files = set(os.listdir(output))
    assert {"instance.bin", "reference.npz", "comparison.json"} <= files

    for spec in experiment.algorithms:
        assert "{}.csv".format(spec.label) in files
        assert "{}.json".format(spec.label) in files
        assert "{}_snapshots.npz".format(spec.label) in files

    with open(os.path.join(output, "comparison.json")) as f:
        comparison = json.load(f)
    assert comparison["iterations"] == experiment.comparison()["iterations"]

    with raises(TypeError):
        experiment.save(None)


def test_experiment_deterministic(tmp_path):
    first = str(tmp_path / "first")
    second = str(tmp_path / "second")

    experiment = _experiment().run()
    experiment.save(first)
    experiment_labels = list(experiment.traces_)
    _experiment().run().save(second)

    for name in ("fista-bt.csv", "ifbs-opt.csv", "fista-bt.json",
                 "ifbs-opt.json", "comparison.json"):
        with open(os.path.join(first, name), "rb") as f:
            a = f.read()
        with open(os.path.join(second, name), "rb") as f:
            b = f.read()
        assert a == b

    with open(os.path.join(first, "timings.json")) as f:
        timings = json.load(f)

    assert set(timings["algorithms"]) == set(experiment_labels)
    assert timings["experiment"] >= 0

    with open(os.path.join(first, "fista-bt.json")) as f:
        assert "time" not in json.load(f)


def test_experiment_parallel():
    sequential = _experiment().run()
    parallel = _experiment(n_jobs=2).run()

    for label, trace in sequential.traces_.items():
        assert np.array_equal(trace.objective,
                              parallel.traces_[label].objective)


def test_analyze_trace():
    instance = _instance(1)
    reference = reference_solve(instance, 1e-12)

    trace = run(instance, ConstantMomentum(0.3), f_ref=reference.f_star,
                termination=TerminationRule(20000, target_gap=1e-12),
                snapshot_stride=1)
    trace.summary.update({"label": "constant", "schedule_spec":
                          "constant:alpha=0.3"})

    analysis = analyze_trace(instance, reference, trace)
    manifold = analysis["manifold"]

    assert analysis["label"] == "constant"
    assert manifold["K_sign"] <= manifold["bound_K_E"]
    if manifold["bound_K_D"] is not None:
        assert manifold["K_support"] <= manifold["bound_K_D"]
    assert analysis["rate"]["fitted_rate"] < 1


def test_analyze_trace_without_bounds():
    instance = _instance(1)
    reference = reference_solve(instance, 1e-12)

    trace = run(instance, FistaBT(), f_ref=reference.f_star,
                termination=TerminationRule(20000, target_gap=1e-12),
                snapshot_stride=10)
    trace.summary.update({"label": "fista-bt", "schedule_spec": "fista-bt"})

    analysis = analyze_trace(instance, reference, trace)
    manifold = analysis["manifold"]

    assert manifold["bound_K_E"] is None
    assert "existence-only" in manifold["note"]
    assert "no explicit bound" in manifold["note"]
    assert manifold["K_sign"] is None
    assert any("snapshot_stride=1" in m for m in analysis["messages"])


def test_parse_schedule():
    instance = _instance()
    L = instance.lipschitz_constant

    assert isinstance(parse_schedule("ista"), ConstantMomentum)
    assert isinstance(parse_schedule("fista-bt"), FistaBT)
    assert isinstance(parse_schedule("chambolle-dossal:a=4"),
                      ChambolleDossal)
    assert isinstance(parse_schedule("capped:alpha_max=0.9"), Capped)
    assert isinstance(parse_schedule("fista-adre:inner=chambolle-dossal"),
                      AdaptiveRestart)
    assert isinstance(parse_schedule("fista-adopt", instance), AdOptSwitch)

    schedule = parse_schedule("constant:alpha=0.3,step=0.5", instance)
    schedule.bind(L)
    alpha, step_size = schedule.next_params(1)

    assert alpha == approx(0.3)
    assert step_size == approx(0.5 / L)


def test_parse_schedule_optimal():
    instance = _instance()
    L = instance.lipschitz_constant

    schedule = parse_schedule("ifbs-opt", instance, l_E=0.25 * L)
    alpha, _ = schedule.bind(L).next_params(1)
    assert alpha == approx(1.0 / 3.0)

    schedule = parse_schedule("ista-opt", instance, l_E=0.25 * L)
    alpha, step_size = schedule.bind(L).next_params(1)
    assert alpha == 0
    assert step_size == approx(2.0 / (1.25 * L))


def test_parse_schedule_errors():
    instance = _instance()

    for spec in ("", "newton", "constant:beta=0.1", "constant:alpha",
                 "constant:alpha=abc", "constant:alpha=1.5",
                 "capped:inner=ista"):
        with raises(ValueError):
            parse_schedule(spec, instance)

    with raises(ValueError):
        parse_schedule("ifbs-opt", instance)

    with raises(ValueError):
        parse_schedule("fista-adopt")

    with raises(ValueError):
        parse_schedule("ista:step=0.5")


def test_algorithm_spec_errors():
    with raises(ValueError):
        AlgorithmSpec("a", algo="newton")

    with raises(ValueError):
        AlgorithmSpec("a", restart_test="energy")

    with raises(ValueError):
        AlgorithmSpec("a", max_iter=-1)

    with raises(ValueError):
        AlgorithmSpec("a", schedule="unknown")


def test_experiment_config_errors():
    with raises(ValueError):
        ExperimentConfig([])

    with raises(ValueError):
        ExperimentConfig([AlgorithmSpec("a"), AlgorithmSpec("a")], m=5, n=10,
                         sparsity=2, seed=0)

    with raises(ValueError):
        ExperimentConfig([AlgorithmSpec("a")], m=5, n=10)

    with raises(ValueError):
        ExperimentConfig([AlgorithmSpec("a")], m=5, n=10, sparsity=2, seed=0,
                         gap_tol=0)


def test_experiment_config_snapshot_stride():
    config = ExperimentConfig([AlgorithmSpec("a")], m=5, n=10, sparsity=2,
                              seed=0)

    assert config.resolve_snapshot_stride(500) == 1
    assert config.resolve_snapshot_stride(2000) == 10

    config.snapshot_stride = 3
    assert config.resolve_snapshot_stride(2000) == 3


def test_read_config(tmp_path):
    path = tmp_path / "experiment.ini"
    path.write_text(
        "[instance]\n"
        "m = 30\n"
        "n = 60\n"
        "sparsity = 5\n"
        "rho = 0.5\n"
        "seed = 3\n"
        "normalize = yes\n"
        "\n"
        "[experiment]\n"
        "name = small\n"
        "gap_tol = 1e-10\n"
        "thresholds = 1e-3, 1e-6\n"
        "snapshot_stride = 5\n"
        "\n"
        "[algorithm fista]\n"
        "schedule = fista-bt\n"
        "max_iter = 200\n"
        "target_gap = 1e-8\n"
        "\n"
        "[algorithm sipm]\n"
        "algo = sipm\n"
        "schedule = constant:alpha=0.3\n"
        "restart_test = objective\n")

    config = read_config(str(path))

    assert config.name == "small"
    assert config.gap_tol == 1e-10
    assert config.thresholds == (1e-3, 1e-6)
    assert config.snapshot_stride == 5
    assert config.normalize
    assert [spec.label for spec in config.algorithms] == ["fista", "sipm"]

    fista, sipm = config.algorithms
    assert fista.max_iter == 200
    assert fista.target_gap == 1e-8
    assert sipm.algo == "sipm"
    assert sipm.max_iter == 10000
    assert sipm.restart_test == "objective"

    instance = config.build_instance()
    assert instance.shape == (30, 60)
    assert instance.lipschitz_constant == approx(1, rel=1e-6)


def test_read_config_invalid_value(tmp_path):
    path = tmp_path / "experiment.ini"
    path.write_text(
        "[instance]\n"
        "m = thirty\n"
        "n = 60\n"
        "sparsity = 5\n"
        "seed = 3\n"
        "\n"
        "[algorithm a]\n")

    with raises(ValueError):
        read_config(str(path))


def test_read_config_without_algorithms(tmp_path):
    path = tmp_path / "experiment.ini"
    path.write_text(
        "[instance]\n"
        "m = 30\n"
        "n = 60\n"
        "sparsity = 5\n"
        "seed = 3\n")

    with raises(ValueError):
        read_config(str(path))


def _support_changes(trace):
    supports = trace.snapshot_x != 0
    changed = np.any(supports[1:] != supports[:-1], axis=1)
    return trace.snapshot_k[1:][changed]


def test_experiment_reproduction():
    instance = generate_instance(300, 2000, 50, entry_std=0.1, rho=1.0,
                                 random_state=7)
    algorithms = [
        AlgorithmSpec(label, schedule=label, max_iter=20000,
                      target_gap=1e-10)
        for label in ("fista-bt", "fista-adre", "fista-adopt", "ifbs-opt")]

    experiment = Experiment("reproduction", instance, algorithms,
                            gap_tol=1e-12, snapshot_stride=10).run()
    iterations = {label: trace.iterations_to(1e-10)
                  for label, trace in experiment.traces_.items()}

    assert all(k is not None for k in iterations.values())
    assert iterations["ifbs-opt"] < iterations["fista-bt"]
    assert iterations["fista-adre"] <= 2 * iterations["ifbs-opt"]
    assert iterations["fista-adopt"] <= 2 * iterations["ifbs-opt"]

    fista = experiment.traces_["fista-bt"]
    changes = _support_changes(fista)
    last_change = changes[-1] if changes.size else 1

    tail = fista.objective[fista.k >= last_change]
    assert np.sum(np.diff(tail) > 0) >= 3
