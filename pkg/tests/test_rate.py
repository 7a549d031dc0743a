"""
Local rate fit and oscillation detection testing.
"""

# Copyright (C) 2026 ifbs developers
import numpy as np

from ifbs.analysis import classify_DE
from ifbs.analysis import detect_identification
from ifbs.analysis import detect_oscillations
from ifbs.analysis import fit_local_rate
from ifbs.analysis import local_curvature
from ifbs.analysis import reference_solve
from ifbs.problems import generate_instance
from ifbs.problems import L1LSInstance
from ifbs.solvers import ConstantMomentum
from ifbs.solvers import FistaBT
from ifbs.solvers import optimal_momentum
from ifbs.solvers import run
from ifbs.solvers import SolverTrace
from ifbs.solvers import TerminationRule
from pytest import approx, raises


def _synthetic_trace(gaps, step_size=1.0):
    trace = SolverTrace(f_ref=0.0)
    for k, gap in enumerate(gaps, 1):
        trace.append(k, gap, 0.0, 0.0, step_size, gap)
    return trace


def _sparse_instance(seed):
    instance = generate_instance(40, 200, 8, random_state=seed)
    rho = 0.2 * np.abs(instance.A.T @ instance.b).max()
    return L1LSInstance(instance.A, instance.b, rho).normalize()


def _identified_run(instance, reference, schedule):
    report = classify_DE(reference.h_star, instance.rho)
    trace = run(instance, schedule, f_ref=reference.f_star,
                termination=TerminationRule(20000, target_gap=1e-12),
                snapshot_stride=1)
    report = detect_identification(trace, instance, reference, report)

    return trace, report, max(report.K_sign, report.K_support)


def test_fit_geometric_gap():
    k = np.arange(1, 41)
    report = fit_local_rate(_synthetic_trace(2.0 * 0.5 ** k))

    assert report.fitted_rate == approx(0.5, abs=1e-6)
    assert report.r_squared >= 0.999999
    assert report.n_points == 20
    assert report.fit_window == (21, 40)


def test_fit_constant_gap():
    report = fit_local_rate(_synthetic_trace(np.full(30, 1e-3)))

    assert report.fitted_rate == approx(1)
    assert report.r_squared == 1


def test_fit_underflow_truncation():
    k = np.arange(1, 81)
    report = fit_local_rate(_synthetic_trace(2.0 * 0.5 ** k))

    assert report.fit_window == (26, 50)
    assert report.fitted_rate == approx(0.5, abs=1e-6)


def test_fit_start():
    k = np.arange(1, 61)
    gaps = np.where(k <= 20, 1.0, 2.0 * 0.5 ** k)
    report = fit_local_rate(_synthetic_trace(gaps), start=20,
                            window_fraction=1.0)

    assert report.fit_window == (21, 50)
    assert report.fitted_rate == approx(0.5, abs=1e-6)


def test_fit_too_few_points():
    k = np.arange(1, 16)

    with raises(ValueError):
        fit_local_rate(_synthetic_trace(2.0 * 0.5 ** k))


def test_fit_invalid_window_fraction():
    k = np.arange(1, 41)

    with raises(ValueError):
        fit_local_rate(_synthetic_trace(0.5 ** k), window_fraction=0)


def test_fit_theoretical_rate():
    k = np.arange(1, 41)
    report = fit_local_rate(_synthetic_trace(0.5 ** k), l_E=0.25)

    assert report.theoretical_rate == approx(0.5)


def test_oscillations_monotone():
    count, period = detect_oscillations(np.linspace(1.0, 0.0, 50))

    assert count == 0
    assert period is None


def test_oscillations_period():
    k = np.arange(1, 601)
    values = 0.99 ** k * np.cos(k / 10) ** 2 + 1e-3

    count, period = detect_oscillations(values)

    assert count >= 15
    assert period == approx(10 * np.pi, rel=0.1)


def test_oscillations_start():
    k = np.arange(1, 601)
    values = 0.99 ** k * np.cos(k / 10) ** 2 + 1e-3

    count, _ = detect_oscillations(values)
    count_late, _ = detect_oscillations(values, start=300)

    assert 0 < count_late < count


def test_oscillations_short_window():
    with raises(ValueError):
        detect_oscillations([1.0, 2.0])


def test_optimal_momentum_local_rate():
    for seed in range(10):
        instance = _sparse_instance(seed)
        reference = reference_solve(instance, 1e-14)
        report = classify_DE(reference.h_star, instance.rho)
        curvature = local_curvature(instance, reference, report)
        assert curvature.l_E > 0

        L = instance.lipschitz_constant
        alpha = optimal_momentum(curvature.l_E, 1.0 / L)
        trace, _, start = _identified_run(instance, reference,
                                          ConstantMomentum(alpha))

        rate = fit_local_rate(trace, reference, 0.5, start, curvature.l_E, L)

        assert rate.fitted_rate <= 1 - np.sqrt(curvature.l_E / L) + 0.05
        assert rate.r_squared >= 0.99
        assert rate.theoretical_rate == approx(
            1 - np.sqrt(curvature.l_E / L), rel=1e-6)


def test_fista_bt_oscillates():
    instance = _sparse_instance(0)
    reference = reference_solve(instance, 1e-14)

    trace, _, start = _identified_run(instance, reference, FistaBT())
    count, period = detect_oscillations(trace, start)

    assert count >= 3
    assert period is not None
