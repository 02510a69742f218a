import numpy as np
import pandas as pd
import pytest

from experiments.constants_sweep import constants_sweep
from experiments.phase_transition import (
    ExperimentConfig,
    cell_axes,
    cell_dimensions,
    random_sparse_signal,
    run_phase_grid,
    run_phase_transition,
    transition_curve,
    transition_trend_fraction,
)
from experiments.plotting import plot_constants_svg, plot_phase_grid_svg
from experiments.stability import (
    certified_matrix,
    fit_linear_trend,
    stability_sweep,
    summarize_stability,
)
from parcs.aric import recovery_sufficient
from parcs.exceptions import ParcsError, ValidationError
from parcs.monitoring.metrics import MetricsCollector


def _small_config(**overrides):
    values = dict(n=16, grid_resolution=(3, 3), trials=2, C_list=(1, 2), seed=3, workers=1)
    values.update(overrides)
    return ExperimentConfig(**values)


def test_random_sparse_signal():
    x = random_sparse_signal(20, 4, seed=1)
    assert x.dtype == np.complex128
    assert np.count_nonzero(x) == 4
    np.testing.assert_allclose(np.abs(x[x != 0]), 1.0)
    np.testing.assert_array_equal(x, random_sparse_signal(20, 4, seed=1))
    assert not np.any(random_sparse_signal(5, 0, seed=2))
    with pytest.raises(ValidationError):
        random_sparse_signal(5, 6)


def test_cell_axes_are_half_open_ramps():
    cell_x, cell_y = cell_axes(_small_config(grid_resolution=(4, 5)))
    np.testing.assert_allclose(cell_x, [0.2, 0.4, 0.6, 0.8, 1.0])
    np.testing.assert_allclose(cell_y, [0.25, 0.5, 0.75, 1.0])


@pytest.mark.parametrize(
    "x, y, C, n, expected",
    [
        (1.0, 1.0, 2, 16, (32, 16)),
        (0.02, 0.01, 4, 16, (4, 1)),
        (0.3, 0.5, 4, 10, (12, 5)),
        (0.5, 0.25, 3, 16, (24, 4)),
    ],
)
def test_cell_dimensions(x, y, C, n, expected):
    assert cell_dimensions(x, y, C, n) == expected


def test_config_validation():
    with pytest.raises(ValidationError):
        _small_config(mode="distinct-varied")
    with pytest.raises(ValidationError):
        _small_config(trials=0)
    with pytest.raises(ValidationError):
        _small_config(C_list=())
    with pytest.raises(ValueError):
        _small_config(entry_dist="cauchy")


def test_config_from_yaml(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("n: 32\ngrid-resolution: [4, 6]\nC_list: [1, 8]\nunused: 3\n")
    cfg = ExperimentConfig.from_yaml(path)
    assert (cfg.n, cfg.rows, cfg.cols, cfg.C_list) == (32, 4, 6, (1, 8))
    assert ExperimentConfig.from_dict(cfg.to_dict()).to_dict() == cfg.to_dict()


def test_transition_curve_edge_grids():
    np.testing.assert_array_equal(transition_curve(np.ones((4, 3))), [1.0, 1.0, 1.0])
    assert np.all(np.isnan(transition_curve(np.zeros((4, 3)))))


def test_transition_curve_tracks_synthetic_boundary():
    rows, cols = 20, 10
    cell_x = np.arange(1, cols + 1) / cols
    cell_y = np.arange(1, rows + 1) / rows
    grid = (cell_y[:, None] <= cell_x[None, :] / 2 + 1e-12).astype(float)
    np.testing.assert_allclose(transition_curve(grid, cell_y), cell_x / 2)


def test_transition_curve_skips_absent_cells():
    grid = np.array([[1.0, np.nan], [np.nan, np.nan], [0.6, np.nan]])
    curve = transition_curve(grid)
    assert curve[0] == pytest.approx(1.0)
    assert np.isnan(curve[1])


def test_transition_trend_fraction():
    assert transition_trend_fraction([np.array([0.1, 0.2]), np.array([0.2, 0.2])]) == 1.0
    assert transition_trend_fraction([np.array([0.3, 0.2]), np.array([0.2, np.nan])]) == 0.0
    assert np.isnan(transition_trend_fraction([np.array([np.nan]), np.array([0.1])]))


def test_phase_grid_full_rows_always_succeed():
    metrics = MetricsCollector()
    grid = run_phase_grid(_small_config(), 2, metrics)
    assert grid.success_fraction.shape == (3, 3)
    np.testing.assert_array_equal(grid.success_fraction[:, -1], 1.0)
    assert grid.transition[-1] == pytest.approx(1.0)
    assert metrics.trials_run == 18
    assert metrics.solves == 18
    assert metrics.get_timer_stats("phase_cell")["count"] == 9


def test_phase_grid_is_reproducible():
    cfg = _small_config(family="rademacher", basis="cosine", mode="identical")
    first = run_phase_grid(cfg, 2)
    second = run_phase_grid(cfg, 2)
    np.testing.assert_array_equal(first.success_fraction, second.success_fraction)


@pytest.mark.slow
def test_parallel_matches_serial():
    serial = run_phase_grid(_small_config(n=8, grid_resolution=(2, 2), trials=1), 2)
    parallel = run_phase_grid(_small_config(n=8, grid_resolution=(2, 2), trials=1, workers=2), 2)
    np.testing.assert_array_equal(serial.success_fraction, parallel.success_fraction)


def test_block_diagonal_cells_are_absent_when_c_does_not_divide_n():
    grid = run_phase_grid(_small_config(mode="block-diagonal", grid_resolution=(2, 2)), 3)
    assert np.all(np.isnan(grid.success_fraction))
    assert np.all(np.isnan(grid.transition))


def test_fixed_ensemble_per_cell():
    grids = run_phase_transition(_small_config(fresh_ensemble_per_trial=False, C_list=(1,)))
    assert list(grids) == [1]
    frame = grids[1].to_frame()
    assert list(frame.columns) == ["C", "row_index", "col_index", "cell_x", "cell_y", "m", "s", "success_fraction"]
    assert len(frame) == 9
    assert list(grids[1].curve_frame().columns) == ["C", "col_index", "cell_x", "transition_y"]


def test_constants_sweep_partitioned():
    df = constants_sweep("partitioned", "fourier", [1, 2, 4], 16)
    np.testing.assert_allclose(df["gamma_distinct_sq"], 1.0, atol=1e-12)
    np.testing.assert_allclose(df["xi_distinct_sq"], [1.0, 2.0, 4.0], atol=1e-12)
    assert df["draws"].tolist() == [1, 1, 1]


def test_constants_sweep_averages_random_draws():
    metrics = MetricsCollector()
    df = constants_sweep("global", "fourier", [2, 4], 16, seed=1, trials=3, metrics=metrics)
    assert df["draws"].tolist() == [3, 3]
    np.testing.assert_allclose(df["xi_distinct_sq"], 1.0, atol=1e-12)
    np.testing.assert_allclose(df["xi_identical_sq"], [2.0, 4.0], atol=1e-10)
    assert metrics.get_all_metrics()["counters"] == {"constants_rows": 2}


def test_certified_matrix_passes_ratio_test():
    A, est = certified_matrix(n=12, m=48, s=1, seed=0, workers=1)
    assert A.shape == (48, 12)
    assert est.s == 2
    assert recovery_sufficient(est)


def test_fit_linear_trend():
    fit = fit_linear_trend([0.0, 1.0, 2.0], [1.0, 3.0, 5.0])
    assert fit["slope"] == pytest.approx(2.0)
    assert fit["intercept"] == pytest.approx(1.0)
    assert fit["residual_ratio"] == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValidationError):
        fit_linear_trend([0.1, 0.1], [1.0, 2.0])


@pytest.mark.slow
def test_stability_error_grows_with_noise():
    df = stability_sweep(seeds=range(2), n=12, s=1, m=48)
    assert set(df.columns) == {"seed", "eta", "error", "bound", "alpha_2s", "beta_2s", "converged"}
    fits, K = summarize_stability(df)
    assert (fits["slope"] > 0).all()
    assert np.isfinite(K)
    largest = df[df["eta"] == df["eta"].max()]
    smallest = df[df["eta"] == 0.0]
    assert (largest["error"].to_numpy() > smallest["error"].to_numpy()).all()


def test_plots_render_from_csv(tmp_path):
    grid = run_phase_grid(_small_config(grid_resolution=(2, 2), trials=1), 1)
    grid_csv = tmp_path / "phase_grid.csv"
    grid.to_frame().to_csv(grid_csv, index=False)
    written = plot_phase_grid_svg(grid_csv, tmp_path / "figs")
    assert [p.name for p in written] == ["phase_grid_C1.svg"]
    assert "<svg" in written[0].read_text()

    constants_csv = tmp_path / "constants.csv"
    constants_sweep("partitioned", "fourier", [1, 2], 8).to_csv(constants_csv, index=False)
    out = plot_constants_svg(constants_csv, tmp_path / "constants.svg")
    assert "<svg" in out.read_text()
    assert not pd.read_csv(constants_csv).empty


def test_random_sparse_supports_are_uniform():
    draws, n, s = 20000, 10, 3
    counts = np.zeros(n)
    for seed in range(draws):
        counts += random_sparse_signal(n, s, seed=seed) != 0
    expected = draws * s / n
    spread = 5 * np.sqrt(draws * (s / n) * (1 - s / n))
    assert np.all(np.abs(counts - expected) <= spread)


def test_underdetermined_stability_matrix_is_not_certified():
    with pytest.raises(ParcsError):
        certified_matrix(n=16, m=12, s=2, seed=0, max_attempts=10, workers=1)


@pytest.mark.slow
def test_stability_error_is_linear_in_noise():
    df = stability_sweep(seeds=range(20))
    fits, _ = summarize_stability(df)
    assert len(fits) == 20
    assert (fits["slope"] > 0).all()
    assert (fits["residual_ratio"] < 0.2).all()


@pytest.mark.slow
def test_transition_rises_with_sensor_count():
    cfg = ExperimentConfig(n=32, grid_resolution=(8, 8), trials=4, C_list=(1, 2, 4), seed=1, workers=1)
    grids = run_phase_transition(cfg)
    curves = [grids[C].transition for C in cfg.C_list]
    assert transition_trend_fraction(curves) >= 0.7
