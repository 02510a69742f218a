"""
Phase-transition experiment for parallel-acquisition l1 recovery.

The grid spans the undersampling axis m/(CN) (columns) and the sparsity axis s/N
(rows), both in (0, 1]. Every cell draws `trials` independent sparse signals,
builds a measurement ensemble, solves noiseless basis pursuit and records the
fraction of trials whose relative error is below tol.

Seeding: cell (row, col) of sensor count C, trial t uses
SeedSequence(seed, spawn_key=(C, row, col, t)), so serial and parallel runs
agree bitwise. Random profile families are drawn once per C from spawn_key (C,).
"""

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
import yaml

from parcs.config import Config
from parcs.exceptions import ValidationError
from parcs.measurement import EntryDistribution, SamplingMode, assemble, sensor_seed
from parcs.monitoring.logger import get_logger
from parcs.monitoring.metrics import MetricsCollector
from parcs.profiles import FAMILIES, ProfileSet, build_profiles
from parcs.recovery import SolverConfig, solve_bpdn, success
from parcs.transforms import UnitaryBasis, basis_from_string

logger = get_logger(__name__)

GRID_MODES = (
    SamplingMode.DISTINCT.value,
    SamplingMode.IDENTICAL.value,
    SamplingMode.BLOCK_DIAGONAL.value,
)

# (successes, [(converged, iterations), ...], elapsed) for one cell, or None if absent
CellOutcome = Optional[Tuple[int, List[Tuple[bool, int]], float]]


@dataclass
class ExperimentConfig:
    """Phase-transition protocol parameters."""

    n: int = 128
    grid_resolution: Tuple[int, int] = (50, 50)
    trials: int = 20
    tol: float = Config.SUCCESS_TOL
    C_list: Tuple[int, ...] = (1, 2, 4)
    family: str = "global"
    basis: str = "fourier"
    mode: str = "distinct"
    circulant: bool = False
    seed: int = 0
    entry_dist: str = "gaussian"
    fresh_ensemble_per_trial: bool = True
    algorithm: str = "admm"
    workers: Optional[int] = None

    def __post_init__(self) -> None:
        self.grid_resolution = tuple(int(v) for v in self.grid_resolution)  # type: ignore[assignment]
        self.C_list = tuple(int(c) for c in self.C_list)

        if self.n < 2:
            raise ValidationError(f"signal dimension must be at least 2, got n={self.n}")
        if len(self.grid_resolution) != 2 or min(self.grid_resolution) < 1:
            raise ValidationError(f"grid resolution must be two positive integers, got {self.grid_resolution}")
        if self.trials < 1:
            raise ValidationError(f"need at least one trial per cell, got {self.trials}")
        if self.tol <= 0:
            raise ValidationError(f"success tolerance must be positive, got {self.tol}")
        if not self.C_list or min(self.C_list) < 1:
            raise ValidationError(f"sensor counts must be positive, got {self.C_list}")
        if self.mode not in GRID_MODES:
            raise ValidationError(f"unknown sampling mode '{self.mode}' (choose from {GRID_MODES})")
        if self.family not in FAMILIES:
            raise ValidationError(f"unknown profile family '{self.family}'")
        EntryDistribution(self.entry_dist)

    @classmethod
    def from_dict(cls, values: Dict[str, Any]) -> "ExperimentConfig":
        """Build from a mapping, ignoring unknown keys."""
        known = {f for f in cls.__dataclass_fields__}
        kwargs = {k.replace("-", "_"): v for k, v in values.items()}
        return cls(**{k: v for k, v in kwargs.items() if k in known})

    @classmethod
    def from_yaml(cls, path: Union[str, Path]) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(yaml.safe_load(fh) or {})

    def to_dict(self) -> Dict[str, Any]:
        values = asdict(self)
        values["grid_resolution"] = list(self.grid_resolution)
        values["C_list"] = list(self.C_list)
        return values

    @property
    def rows(self) -> int:
        return self.grid_resolution[0]

    @property
    def cols(self) -> int:
        return self.grid_resolution[1]


@dataclass(eq=False)
class PhaseGrid:
    """Success fractions of one sensor count over the (m/CN, s/N) grid."""

    C: int
    success_fraction: np.ndarray
    cell_x: np.ndarray
    cell_y: np.ndarray
    m_values: np.ndarray
    s_values: np.ndarray
    config: ExperimentConfig
    transition: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        self.transition = transition_curve(self.success_fraction, self.cell_y)

    def to_frame(self) -> pd.DataFrame:
        """One row per cell (absent cells carry NaN)."""
        rows, cols = self.success_fraction.shape
        r_idx, c_idx = np.meshgrid(np.arange(rows), np.arange(cols), indexing="ij")
        return pd.DataFrame(
            {
                "C": self.C,
                "row_index": r_idx.ravel(),
                "col_index": c_idx.ravel(),
                "cell_x": self.cell_x[c_idx.ravel()],
                "cell_y": self.cell_y[r_idx.ravel()],
                "m": self.m_values[c_idx.ravel()],
                "s": self.s_values[r_idx.ravel()],
                "success_fraction": self.success_fraction.ravel(),
            }
        )

    def curve_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "C": self.C,
                "col_index": np.arange(self.cell_x.size),
                "cell_x": self.cell_x,
                "transition_y": self.transition,
            }
        )


def random_sparse_signal(
    n: int, s: int, seed: Union[int, np.random.SeedSequence, None] = None
) -> np.ndarray:
    """
    Complex s-sparse vector with unimodular nonzeros.

    The support is uniform without replacement and the phases are uniform on
    the unit circle.

    Args:
        n: Length
        s: Number of nonzeros (0 <= s <= n)
        seed: Seed or SeedSequence

    Returns:
        complex128 vector of length n
    """
    if not 0 <= s <= n:
        raise ValidationError(f"sparsity must lie in [0, {n}], got s={s}")

    rng = np.random.default_rng(seed)
    support = rng.choice(n, size=s, replace=False)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=s)

    x = np.zeros(n, dtype=np.complex128)
    x[support] = np.exp(1j * phases)
    return x


def cell_axes(cfg: ExperimentConfig) -> Tuple[np.ndarray, np.ndarray]:
    """Grid ordinates: cell_x = (col+1)/cols for m/(CN), cell_y = (row+1)/rows for s/N."""
    cell_x = np.arange(1, cfg.cols + 1) / cfg.cols
    cell_y = np.arange(1, cfg.rows + 1) / cfg.rows
    return cell_x, cell_y


def cell_dimensions(cell_x: float, cell_y: float, C: int, n: int) -> Tuple[int, int]:
    """
    Integer (m, s) of a grid cell.

    m = round(cell_x * C * n) snapped up to a multiple of C (at least C);
    s = max(1, round(cell_y * n)).
    """
    m_raw = int(round(cell_x * C * n))
    m = max(C, int(math.ceil(m_raw / C)) * C)
    s = min(n, max(1, int(round(cell_y * n))))
    return m, s


def profiles_for(cfg: ExperimentConfig, C: int) -> ProfileSet:
    """Sensor profiles of count C, fixed across the grid."""
    return build_profiles(
        cfg.family, C, cfg.n, seed=np.random.SeedSequence(cfg.seed, spawn_key=(C,)), circulant=cfg.circulant
    )


@lru_cache(maxsize=8)
def _basis(kind: str, n: int) -> UnitaryBasis:
    return basis_from_string(kind, n)


def _run_cell(
    cfg: ExperimentConfig, profiles: ProfileSet, C: int, row: int, col: int, m: int, s: int
) -> CellOutcome:
    U = _basis(cfg.basis, cfg.n)
    solver = SolverConfig(eta=0.0, algorithm=cfg.algorithm)
    cell_ss = np.random.SeedSequence(cfg.seed, spawn_key=(C, row, col))

    start = time.perf_counter()
    successes = 0
    solves: List[Tuple[bool, int]] = []
    ensemble = None
    for trial in range(cfg.trials):
        signal_ss, ensemble_ss = np.random.SeedSequence(
            cfg.seed, spawn_key=(C, row, col, trial)
        ).spawn(2)

        try:
            if ensemble is None or cfg.fresh_ensemble_per_trial:
                ensemble = assemble(
                    SamplingMode(cfg.mode),
                    profiles,
                    U,
                    m,
                    EntryDistribution(cfg.entry_dist),
                    ensemble_ss if cfg.fresh_ensemble_per_trial else cell_ss,
                )
        except ValidationError as e:
            logger.debug(f"C={C} cell ({row}, {col}) absent: {e}")
            return None

        x = random_sparse_signal(cfg.n, s, signal_ss)
        result = solve_bpdn(ensemble.matrix, ensemble.matrix @ x, solver)
        solves.append((result.converged, result.iterations))
        if success(x, result.x_hat, cfg.tol):
            successes += 1

    return successes, solves, time.perf_counter() - start


def _run_cell_task(task: Tuple[Any, ...]) -> CellOutcome:
    return _run_cell(*task)


def run_phase_grid(
    cfg: ExperimentConfig, C: int, metrics: Optional[MetricsCollector] = None
) -> PhaseGrid:
    """
    Success fractions over the grid for one sensor count.

    Args:
        cfg: Experiment configuration
        C: Sensor count
        metrics: Optional collector for trial, solve and cell-timing tallies

    Returns:
        PhaseGrid (cells that cannot be instantiated hold NaN)
    """
    cell_x, cell_y = cell_axes(cfg)
    dims = [[cell_dimensions(x, y, C, cfg.n) for x in cell_x] for y in cell_y]
    m_values = np.array([dims[0][col][0] for col in range(cfg.cols)])
    s_values = np.array([dims[row][0][1] for row in range(cfg.rows)])

    profiles = profiles_for(cfg, C)
    tasks = [
        (cfg, profiles, C, row, col, int(m_values[col]), int(s_values[row]))
        for row in range(cfg.rows)
        for col in range(cfg.cols)
    ]

    workers = Config.worker_count(cfg.workers)
    logger.info(
        f"Phase grid C={C}: {cfg.rows}x{cfg.cols} cells, {cfg.trials} trials, "
        f"mode={cfg.mode}, family={cfg.family}, basis={cfg.basis}, workers={workers}"
    )

    if workers == 1:
        outcomes = [_run_cell_task(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_cell_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))

    fraction = np.full((cfg.rows, cfg.cols), np.nan)
    unconverged = 0
    for task, outcome in zip(tasks, outcomes):
        if outcome is None:
            continue
        row, col = task[3], task[4]
        successes, solves, elapsed = outcome
        fraction[row, col] = successes / cfg.trials
        unconverged += sum(1 for converged, _ in solves if not converged)

        if metrics is not None:
            metrics.record_timer("phase_cell", elapsed)
            for converged, iterations in solves:
                metrics.record_solve(converged, iterations)
            for trial in range(cfg.trials):
                metrics.record_trial(trial < successes)

    if unconverged:
        logger.warning(f"Phase grid C={C}: {unconverged} solve(s) stopped before meeting tolerances")

    absent = int(np.isnan(fraction).sum())
    if absent:
        logger.info(f"Phase grid C={C}: {absent} cell(s) could not be instantiated")

    return PhaseGrid(
        C=C,
        success_fraction=fraction,
        cell_x=cell_x,
        cell_y=cell_y,
        m_values=m_values,
        s_values=s_values,
        config=cfg,
    )


def run_phase_transition(
    cfg: ExperimentConfig, metrics: Optional[MetricsCollector] = None
) -> Dict[int, PhaseGrid]:
    """Run the grid for every sensor count in cfg.C_list."""
    grids = {}
    for C in cfg.C_list:
        grids[C] = run_phase_grid(cfg, C, metrics)
    return grids


def transition_curve(
    success_fraction: np.ndarray,
    cell_y: Optional[np.ndarray] = None,
    level: Optional[float] = None,
) -> np.ndarray:
    """
    Empirical phase-transition ordinate per column.

    For each column (fixed m/CN) the largest s/N whose success fraction is at
    least `level`; NaN where no cell reaches it. NaN cells are skipped.

    Args:
        success_fraction: (rows, cols) array, rows ordered by increasing s/N
        cell_y: Row ordinates (defaults to (row+1)/rows)
        level: Success level (defaults to Config.TRANSITION_LEVEL)

    Returns:
        Length-cols array of s/N values
    """
    grid = np.asarray(success_fraction, dtype=float)
    level = Config.TRANSITION_LEVEL if level is None else level
    rows, cols = grid.shape
    if cell_y is None:
        cell_y = np.arange(1, rows + 1) / rows

    curve = np.full(cols, np.nan)
    with np.errstate(invalid="ignore"):
        reached = grid >= level
    for col in range(cols):
        hits = np.flatnonzero(reached[:, col])
        if hits.size:
            curve[col] = cell_y[hits[-1]]
    return curve


def transition_trend_fraction(curves: Sequence[np.ndarray]) -> float:
    """
    Share of columns where the transition ordinate is non-decreasing across curves.

    Args:
        curves: Transition curves ordered by increasing C

    Returns:
        Fraction over columns where every curve exists (NaN if there are none)
    """
    stacked = np.vstack([np.asarray(c, dtype=float) for c in curves])
    present = np.all(np.isfinite(stacked), axis=0)
    if not present.any():
        return float("nan")
    monotone = np.all(np.diff(stacked[:, present], axis=0) >= 0, axis=0)
    return float(np.mean(monotone))
