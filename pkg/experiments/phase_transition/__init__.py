"""
Phase-transition experiment: empirical success of l1 recovery over the
(m/CN, s/N) plane for several sensor counts.
"""

from .experiment import (
    GRID_MODES,
    ExperimentConfig,
    PhaseGrid,
    cell_axes,
    cell_dimensions,
    profiles_for,
    random_sparse_signal,
    run_phase_grid,
    run_phase_transition,
    transition_curve,
    transition_trend_fraction,
)

__all__ = [
    "GRID_MODES",
    "ExperimentConfig",
    "PhaseGrid",
    "cell_axes",
    "cell_dimensions",
    "profiles_for",
    "random_sparse_signal",
    "run_phase_grid",
    "run_phase_transition",
    "transition_curve",
    "transition_trend_fraction",
]
