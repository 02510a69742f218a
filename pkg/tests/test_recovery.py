import numpy as np
import pytest

from parcs.exceptions import LengthMismatchError, ValidationError
from parcs.monitoring.metrics import MetricsCollector
from parcs.recovery import (
    NoiseBallProjector,
    SolverConfig,
    l1_norm,
    operator_norm,
    relative_error,
    sigma_s,
    soft_threshold,
    solve_bpdn,
    stability_bound,
    success,
)


def _instance(seed, m=24, n=48, s=3, complex_=True):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((m, n)) / np.sqrt(m)
    x = np.zeros(n, dtype=np.complex128 if complex_ else float)
    support = rng.choice(n, s, replace=False)
    x[support] = np.exp(2j * np.pi * rng.random(s)) if complex_ else rng.choice([-1.0, 1.0], s)
    return A, x


def test_sigma_s():
    assert sigma_s(np.array([3.0, 2.0, 1.0]), 1) == pytest.approx(3.0)
    assert sigma_s(np.array([3.0, -2.0, 1.0]), 3) == 0.0
    assert sigma_s(np.array([1j, 1.0]), 0) == pytest.approx(2.0)
    with pytest.raises(ValidationError):
        sigma_s(np.ones(3), -1)


def test_relative_error_and_success():
    x = np.array([1.0, 0.0, 0.0])
    assert relative_error(x, x) == 0.0
    assert relative_error(x, np.array([1.0, 1e-4, 0.0])) == pytest.approx(1e-4)
    assert success(x, np.array([1.0, 1e-4, 0.0]))
    assert not success(x, np.array([1.0, 2e-3, 0.0]))
    with pytest.raises(LengthMismatchError):
        relative_error(x, np.ones(2))


def test_zero_signal_success_needs_zero_estimate():
    zero = np.zeros(4)
    assert success(zero, zero)
    assert not success(zero, np.array([0.0, 1e-9, 0.0, 0.0]))
    assert relative_error(zero, np.array([3.0, 4.0, 0.0, 0.0])) == pytest.approx(5.0)


def test_stability_bound_formula():
    x = np.array([3.0, 2.0, 1.0, 0.0])
    assert stability_bound(x, 1, 0.5, 0.25) == pytest.approx(3.0 + 1.0)
    with pytest.raises(ValidationError):
        stability_bound(x, 0, 0.1, 1.0)


def test_soft_threshold_shrinks_moduli():
    v = np.array([3 + 4j, 0.5, -2.0])
    out = soft_threshold(v, 1.0)
    np.testing.assert_allclose(out, [(3 + 4j) * 0.8, 0.0, -1.0])
    assert l1_norm(out) == pytest.approx(5.0)


def test_operator_norm():
    A = np.diag([1.0, 4.0, 2.0])
    assert operator_norm(A) == pytest.approx(4.0, rel=1e-6)
    assert operator_norm(np.zeros((2, 2))) == 0.0


def test_projection_lands_in_noise_ball(rng):
    A = rng.standard_normal((5, 9))
    y = rng.standard_normal(5)
    projector = NoiseBallProjector(A, y, eta=0.3)
    v = 10.0 * rng.standard_normal(9)
    w = projector.project(v)
    assert np.linalg.norm(A @ w - y) == pytest.approx(0.3, rel=1e-8)
    np.testing.assert_allclose(projector.project(w), w, atol=1e-10)


def test_eta_below_range_distance_is_raised(caplog):
    A = np.vstack([np.eye(2), np.zeros((1, 2))])
    y = np.array([1.0, 2.0, 0.5])
    result = solve_bpdn(A, y, SolverConfig(eta=0.0))
    assert result.eta_effective == pytest.approx(0.5)
    np.testing.assert_allclose(result.x_hat, [1.0, 2.0], atol=1e-6)
    assert any("below dist" in record.getMessage() for record in caplog.records)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_admm_recovers_sparse_complex_signal(seed):
    A, x = _instance(seed)
    metrics = MetricsCollector()
    result = solve_bpdn(A, A @ x, SolverConfig(eta=0.0), metrics)
    assert result.converged
    assert success(x, result.x_hat)
    assert result.final_feasibility_gap <= 1e-7
    assert metrics.solves == 1
    assert metrics.get_timer_stats("solve_bpdn")["count"] == 1


def test_pdhg_agrees_with_admm():
    A, x = _instance(4, complex_=False)
    result = solve_bpdn(A, A @ x, SolverConfig(eta=0.0, algorithm="pdhg"))
    assert result.algorithm == "pdhg"
    assert relative_error(x, result.x_hat) < 1e-2


def test_noisy_error_scales_with_eta():
    A, x = _instance(5)
    direction = np.random.default_rng(6).standard_normal(A.shape[0])
    direction /= np.linalg.norm(direction)
    errors = []
    for eta in (1e-3, 1e-1):
        result = solve_bpdn(A, A @ x + eta * direction, SolverConfig(eta=eta))
        assert np.linalg.norm(A @ result.x_hat - (A @ x + eta * direction)) <= eta + 1e-6
        errors.append(np.linalg.norm(result.x_hat - x))
    assert errors[0] < errors[1]


def test_non_convergence_returns_best_iterate():
    A, x = _instance(7)
    result = solve_bpdn(A, A @ x, SolverConfig(eta=0.0, max_iterations=2))
    assert not result.converged
    assert result.iterations == 2
    assert result.x_hat.shape == x.shape


def test_solver_config_validation():
    with pytest.raises(ValidationError):
        SolverConfig(eta=-1.0)
    with pytest.raises(ValidationError):
        SolverConfig(max_iterations=0)
    with pytest.raises(ValidationError):
        SolverConfig(algorithm="ista")


def test_measurement_length_mismatch():
    with pytest.raises(LengthMismatchError):
        solve_bpdn(np.eye(3), np.ones(4))


@pytest.mark.parametrize("scale", [0.1, 10.0])
def test_solution_is_invariant_under_joint_scaling(scale):
    A, x = _instance(8)
    direction = np.random.default_rng(9).standard_normal(A.shape[0])
    y = A @ x + 0.05 * direction / np.linalg.norm(direction)
    base = solve_bpdn(A, y, SolverConfig(eta=0.05))
    scaled = solve_bpdn(scale * A, scale * y, SolverConfig(eta=0.05 * scale))
    np.testing.assert_allclose(scaled.x_hat, base.x_hat, atol=1e-6)


def test_square_full_rank_recovers_exactly():
    for seed in range(50):
        rng = np.random.default_rng(seed)
        A = rng.standard_normal((16, 16)) / 4.0
        x = np.zeros(16)
        support = rng.choice(16, 3, replace=False)
        x[support] = rng.standard_normal(3)
        result = solve_bpdn(A, A @ x, SolverConfig(eta=0.0))
        assert relative_error(x, result.x_hat) < 1e-6, seed
        assert result.final_feasibility_gap <= 1e-7, seed
