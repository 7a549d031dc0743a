"""
Inertial forward-backward engine testing.
"""

# Copyright (C) 2026 ifbs developers
import numpy as np

from ifbs.analysis import reference_solve
from ifbs.exceptions import NumericalError
from ifbs.problems import CompositeProblem
from ifbs.problems import generate_instance
from ifbs.problems import L1LSInstance
from ifbs.problems import LeastSquares
from ifbs.problems import Quadratic
from ifbs.solvers import AdaptiveRestart
from ifbs.solvers import Capped
from ifbs.solvers import ConstantMomentum
from ifbs.solvers import FistaBT
from ifbs.solvers import fixed_point_residual
from ifbs.solvers import ifbs_step
from ifbs.solvers import lyapunov_energy
from ifbs.solvers import run
from ifbs.solvers import sipm_step
from ifbs.solvers import SolverState
from ifbs.solvers import SolverTrace
from ifbs.solvers import TerminationRule
from pytest import approx, raises


IDENTITY_B = np.array([2.0, 0.4, 1.0])


def _identity_instance():
    return L1LSInstance(np.eye(3), IDENTITY_B, rho=1.0)


def _random_instance(seed, m=20, n=40, sparsity=4, rho=0.01):
    instance = generate_instance(m, n, sparsity, random_state=seed)
    return L1LSInstance(instance.A, instance.b, rho)


def test_ifbs_step_single_variable():
    instance = L1LSInstance([[1.0]], [2.0], rho=1.0)
    state = ifbs_step(instance, SolverState.initial([0.0]), 0.0, 1.0)

    assert state.x_curr == approx([1.0])
    assert state.k == 2


def test_sipm_step_single_variable():
    instance = L1LSInstance([[1.0]], [2.0], rho=1.0)
    state = sipm_step(instance, SolverState.initial([0.0]), 0.7, 1.0)

    assert state.x_curr == approx([1.0])


def test_sipm_step_momentum():
    instance = L1LSInstance([[1.0]], [2.0], rho=1.0)
    state = SolverState([1.0], [0.0], [1.0])

    assert sipm_step(instance, state, 0.2, 1.0).x_curr == approx([1.2])


def test_step_invalid_alpha():
    instance = _identity_instance()

    with raises(ValueError):
        ifbs_step(instance, SolverState.initial(np.zeros(3)), 1.5, 1.0)


def test_zero_momentum_steps_identical():
    instance = _random_instance(0)
    rng = np.random.default_rng(1)

    for _ in range(20):
        state = SolverState(rng.standard_normal(40), rng.standard_normal(40),
                            np.zeros(40))
        step_size = 1.0 / instance.lipschitz_constant

        a = ifbs_step(instance, state, 0.0, step_size)
        b = sipm_step(instance, state, 0.0, step_size)
        assert np.array_equal(a.x_curr, b.x_curr)


def test_gradient_descent_on_quadratic():
    Q = np.array([[2.0, 0.5], [0.5, 1.0]])
    c = np.array([1.0, -1.0])
    problem = CompositeProblem(Quadratic(Q, c), rho=0.0)
    x = np.array([0.3, -0.2])

    state = ifbs_step(problem, SolverState.initial(x), 0.0, 0.1)
    assert state.x_curr == approx(x - 0.1 * (Q @ x - c), abs=1e-15)


def test_fixed_point():
    instance = _identity_instance()
    x_star = np.array([1.0, 0.0, 0.0])
    state = SolverState.initial(x_star)

    for alpha in (0.0, 0.5, 0.9):
        assert np.array_equal(ifbs_step(instance, state, alpha, 1.0).x_curr,
                              x_star)
        assert np.array_equal(sipm_step(instance, state, alpha, 1.0).x_curr,
                              x_star)

    assert fixed_point_residual(instance, x_star, 1.0) == 0


def test_energy_zero_step():
    instance = _identity_instance()
    state = SolverState.initial([0.5, 0.5, 0.5])

    assert lyapunov_energy(instance, state, 0.7, 1.0) == approx(
        instance.objective(state.x_curr))


def test_energy_zero_momentum():
    instance = _identity_instance()
    state = SolverState([1.0, 0.0, 0.0], [0.0, 0.0, 0.0], np.zeros(3))

    assert lyapunov_energy(instance, state, 0.0, 1.0) == approx(
        instance.objective(state.x_curr))


def test_energy_plug_in():
    # F(x) = 0.5 * 4 + 0.5 * 2 = 3 and ||delta||^2 = 2
    instance = L1LSInstance(np.eye(2), [0.0, 0.0], rho=0.5)
    state = SolverState([2.0, 0.0], [1.0, 1.0], [2.0, 0.0])

    assert lyapunov_energy(instance, state, 0.5, 0.5) == approx(4)


def test_run_ista_identity():
    instance = _identity_instance()
    trace = run(instance, ConstantMomentum(0.0),
                termination=TerminationRule(max_iter=100, step_tol=1e-12))

    assert trace.x_final == approx([1.0, 0.0, 0.0], abs=1e-12)
    assert trace.summary["reason"] == "step_tol"
    assert trace.summary["status"] == "ok"


def test_run_empty():
    trace = run(_identity_instance(), FistaBT(),
                termination=TerminationRule(max_iter=0))

    assert len(trace) == 0
    assert trace.summary["reason"] == "empty"
    assert trace.summary["n_iter"] == 0


def test_run_max_iter():
    trace = run(_random_instance(2), FistaBT(),
                termination=TerminationRule(max_iter=25))

    assert len(trace) == 25
    assert np.array_equal(trace.k, np.arange(1, 26))
    assert trace.summary["reason"] == "max_iter"


def test_run_first_row():
    instance = _identity_instance()
    trace = run(instance, FistaBT(), termination=TerminationRule(5))

    assert trace.objective[0] == approx(instance.objective(np.zeros(3)))
    assert trace.step_norm[0] == 0
    assert trace.alpha[0] == 0
    assert np.isnan(trace.gap[0])


def test_run_target_gap():
    instance = _identity_instance()
    trace = run(instance, FistaBT(), f_ref=2.08,
                termination=TerminationRule(1000, target_gap=1e-10))

    assert trace.summary["reason"] == "target_gap"
    assert trace.gap[-1] <= 1e-10
    assert trace.iterations_to(1e-10) == trace.k[-1]


def test_run_target_gap_requires_reference():
    with raises(ValueError):
        run(_identity_instance(), FistaBT(),
            termination=TerminationRule(10, target_gap=1e-6))


def test_run_requires_fresh_schedule():
    schedule = FistaBT().bind(1.0)
    schedule.next_params(1)

    with raises(ValueError):
        run(_identity_instance(), schedule)


def test_run_invalid_algorithm():
    with raises(ValueError):
        run(_identity_instance(), FistaBT(), algo="newton")


def test_run_problem_type():
    with raises(TypeError):
        run(np.eye(3), FistaBT())


def test_termination_rule_invalid():
    with raises(ValueError):
        TerminationRule(max_iter=-1)


def test_energy_decrease():
    rng = np.random.default_rng(3)

    for seed in range(50):
        instance = _random_instance(seed)
        if seed % 2:
            schedule = ConstantMomentum(rng.uniform(0, 0.95))
        else:
            schedule = Capped(FistaBT(), 0.9)

        trace = run(instance, schedule, termination=TerminationRule(200))
        assert np.all(np.diff(trace.energy) <= 1e-10)


def test_iterates_converge():
    instance = generate_instance(40, 20, 5, rho=0.01, random_state=3)
    trace = run(instance, ConstantMomentum(0.5),
                termination=TerminationRule(3000), snapshot_stride=100)

    step_size = 1.0 / instance.lipschitz_constant
    tail = trace.snapshot_x[-5:]

    assert fixed_point_residual(instance, trace.x_final, step_size) <= 1e-8
    assert np.max(np.abs(tail - trace.x_final)) <= 1e-6


def test_fista_bt_envelope():
    for seed in range(10):
        instance = generate_instance(40, 200, 8, random_state=seed)
        instance = L1LSInstance(instance.A, instance.b,
                                0.1 * np.abs(instance.A.T @ instance.b).max())
        reference = reference_solve(instance, 1e-10)

        trace = run(instance, FistaBT(), f_ref=reference.f_star,
                    termination=TerminationRule(500))

        # row k holds x^k, obtained after k - 1 steps from x^1 = x^0 = 0
        L = instance.lipschitz_constant
        distance = float(reference.x_star @ reference.x_star)
        k = trace.k[1:]
        envelope = 2 * L * distance / k ** 2

        assert np.all(trace.gap[1:] <= envelope + 1e-10)


def test_restart_rows_have_zero_momentum():
    instance = _random_instance(4)
    trace = run(instance, AdaptiveRestart(FistaBT()),
                termination=TerminationRule(500))

    assert trace.summary["n_restarts"] == int(trace.restart.sum())
    assert np.all(trace.alpha[trace.restart] == 0)


def test_restart_objective_test():
    instance = _random_instance(5)
    trace = run(instance, AdaptiveRestart(FistaBT()),
                termination=TerminationRule(300), restart_test="objective")

    restarts = np.flatnonzero(trace.restart)
    for i in restarts:
        assert trace.objective[i] > trace.objective[i - 1]


def test_numerical_error():
    instance = L1LSInstance(np.eye(2), [1.0, 1.0], rho=0.0)

    with raises(NumericalError) as excinfo:
        run(instance, ConstantMomentum(0.0, step_size=10.0),
            termination=TerminationRule(5000))

    trace = excinfo.value.trace
    assert trace is not None
    assert trace.summary["status"] == "aborted"
    assert len(trace) > 0


def test_snapshots():
    trace = run(_identity_instance(), ConstantMomentum(0.3),
                termination=TerminationRule(10), snapshot_stride=3)

    assert np.array_equal(trace.snapshot_k, [1, 4, 7, 10])
    assert trace.snapshot_x.shape == (4, 3)
    assert not trace.has_dense_snapshots


def test_dense_snapshots():
    trace = run(_identity_instance(), ConstantMomentum(0.3),
                termination=TerminationRule(10), snapshot_stride=1)

    assert trace.has_dense_snapshots
    assert np.array_equal(trace.snapshot_x[-1], trace.x_final)


def test_trace_csv(tmp_path):
    trace = run(_random_instance(6), FistaBT(), f_ref=0.0,
                termination=TerminationRule(30))
    path = str(tmp_path / "trace.csv")
    trace.to_csv(path)

    with open(path) as f:
        header = f.readline().strip()

    assert header == "k,obj,gap,step_norm,alpha,lambda,energy,restart,switch"

    loaded = SolverTrace.from_csv(path, trace.summary)
    assert np.array_equal(loaded.objective, trace.objective)
    assert np.array_equal(loaded.alpha, trace.alpha)
    assert loaded.summary["n_iter"] == 30


def test_trace_snapshots_file(tmp_path):
    trace = run(_identity_instance(), ConstantMomentum(0.3),
                termination=TerminationRule(10), snapshot_stride=1)
    path = str(tmp_path / "snapshots.npz")
    trace.save_snapshots(path)

    loaded = SolverTrace()
    loaded.load_snapshots(path)

    assert np.array_equal(loaded.snapshot_k, trace.snapshot_k)
    assert np.array_equal(loaded.snapshot_y, trace.snapshot_y)
    assert np.array_equal(loaded.x_final, trace.x_final)


def test_trace_rows_increasing():
    trace = SolverTrace()
    trace.append(1, 1.0, 0.0, 0.0, 1.0, 1.0)

    with raises(ValueError):
        trace.append(1, 1.0, 0.0, 0.0, 1.0, 1.0)


def test_trace_invalid_column():
    with raises(ValueError):
        SolverTrace().column("beta")


def test_ista_default_step_orthogonal_start():
    # the all-ones vector is orthogonal to the top eigenvector of A^T A
    u = np.array([1.0, -1.0, 0.0]) / np.sqrt(2)
    w = np.ones(3) / np.sqrt(3)
    A = np.vstack([np.sqrt(3) * u, w])
    instance = L1LSInstance(A, [5.0, 0.0], rho=0.0)

    assert instance.lipschitz_constant == approx(3, rel=1e-9)

    trace = run(instance, ConstantMomentum(0.0),
                termination=TerminationRule(60))

    assert trace.objective[-1] <= trace.objective[0]
    assert np.all(np.diff(trace.objective) <= 1e-12)


def test_least_squares_problem():
    problem = CompositeProblem(LeastSquares([[1.0]], [2.0]), rho=1.0)
    trace = run(problem, ConstantMomentum(0.0),
                termination=TerminationRule(10, step_tol=0.0))

    assert trace.x_final == approx([1.0])
