"""
Robustness of l1 recovery to measurement noise.

For each seed a Gaussian matrix is certified by exhaustive ARIC estimation at
order 2s (beta_2s / alpha_2s below the recovery threshold). One sparse signal
and one unit noise direction are then reused across the noise levels, so the
recovery error can be compared against eta directly.

The default m = 64 exceeds n = 16. The order-4 ratio test runs over all
1820 four-column submatrices, and the extreme singular values of an m x 4
Gaussian block spread like (1 +- sqrt(4/m))^2, so draws with m <= n
practically never pass it. With m > n the noiseless problem recovers x
exactly, which leaves the noise term of the bound as the quantity under test.
"""

from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import yaml

from parcs.aric import AricEstimate, aric_exhaustive, recovery_sufficient
from parcs.exceptions import ParcsError, ValidationError
from parcs.measurement import EntryDistribution, subgaussian_matrix
from parcs.monitoring.logger import get_logger
from parcs.monitoring.metrics import MetricsCollector
from parcs.recovery import SolverConfig, solve_bpdn, stability_bound

from ..phase_transition.experiment import random_sparse_signal

logger = get_logger(__name__)

DEFAULT_ETAS = (0.0, 1e-3, 1e-2, 1e-1)
MAX_CERTIFY_ATTEMPTS = 100


def certified_matrix(
    n: int,
    m: int,
    s: int,
    seed: int,
    max_attempts: int = MAX_CERTIFY_ATTEMPTS,
    workers: Optional[int] = None,
) -> Tuple[np.ndarray, AricEstimate]:
    """
    First Gaussian m x n matrix (scaled by m^-1/2) passing the order-2s ratio test.

    Args:
        n: Columns
        m: Rows
        s: Sparsity; the test runs at order 2s
        seed: Master seed (attempt k uses spawn_key (0, k))
        max_attempts: Draws before giving up
        workers: Thread cap for exhaustive enumeration

    Returns:
        (A, estimate at order 2s)
    """
    if not 1 <= 2 * s <= n:
        raise ValidationError(f"need 1 <= 2s <= n, got s={s}, n={n}")

    for attempt in range(max_attempts):
        ss = np.random.SeedSequence(seed, spawn_key=(0, attempt))
        A = subgaussian_matrix(m, n, EntryDistribution.GAUSSIAN, ss) / np.sqrt(m)
        est = aric_exhaustive(A, 2 * s, workers=workers)
        if recovery_sufficient(est):
            logger.debug(f"seed={seed}: certified after {attempt + 1} draw(s), ratio={est.ratio:.3f}")
            return A, est

    raise ParcsError(f"no certified {m}x{n} matrix at order {2 * s} in {max_attempts} draws")


def stability_sweep(
    seeds: Iterable[int] = range(20),
    etas: Sequence[float] = DEFAULT_ETAS,
    n: int = 16,
    s: int = 2,
    m: int = 64,
    algorithm: str = "admm",
    metrics: Optional[MetricsCollector] = None,
) -> pd.DataFrame:
    """
    Recovery error against the noise level on certified instances.

    Args:
        seeds: One certified instance per seed
        etas: Noise levels; the noise has norm exactly eta
        n: Signal dimension
        s: Sparsity
        m: Rows of the measurement matrix
        algorithm: Solver algorithm
        metrics: Optional collector for solve tallies

    Returns:
        DataFrame with columns seed, eta, error, bound, alpha_2s, beta_2s, converged
    """
    rows: List[Dict[str, object]] = []
    for seed in seeds:
        A, est = certified_matrix(n, m, s, seed)
        x = random_sparse_signal(n, s, np.random.SeedSequence(seed, spawn_key=(1,)))

        noise_rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(2,)))
        direction = noise_rng.standard_normal(m) + 1j * noise_rng.standard_normal(m)
        direction /= np.linalg.norm(direction)

        clean = A @ x
        for eta in etas:
            result = solve_bpdn(
                A, clean + eta * direction, SolverConfig(eta=float(eta), algorithm=algorithm), metrics
            )
            rows.append(
                {
                    "seed": int(seed),
                    "eta": float(eta),
                    "error": float(np.linalg.norm(result.x_hat - x)),
                    "bound": stability_bound(x, s, float(eta), est.alpha_s),
                    "alpha_2s": est.alpha_s,
                    "beta_2s": est.beta_s,
                    "converged": bool(result.converged),
                }
            )

    df = pd.DataFrame(rows)
    logger.info(f"Stability sweep: {df['seed'].nunique() if len(df) else 0} instance(s), {len(etas)} noise level(s)")
    return df


def fit_linear_trend(etas: Sequence[float], errors: Sequence[float]) -> Dict[str, float]:
    """
    Least-squares line error ~ slope * eta + intercept.

    Returns:
        slope, intercept and residual_ratio = ||residual|| / ||fit||
    """
    etas = np.asarray(etas, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if etas.size < 2 or np.ptp(etas) == 0.0:
        raise ValidationError("need at least two distinct noise levels")

    slope, intercept = np.polyfit(etas, errors, 1)
    fit = slope * etas + intercept
    fit_norm = np.linalg.norm(fit)
    residual_ratio = float(np.linalg.norm(errors - fit) / fit_norm) if fit_norm > 0 else float("inf")
    return {"slope": float(slope), "intercept": float(intercept), "residual_ratio": residual_ratio}


def summarize_stability(df: pd.DataFrame) -> Tuple[pd.DataFrame, float]:
    """
    Per-seed linear fits and the calibrated constant K.

    K is the largest error / bound ratio over rows with a positive bound.

    Returns:
        (DataFrame with seed, slope, intercept, residual_ratio; K)
    """
    fits = []
    for seed, group in df.groupby("seed", sort=True):
        fit = fit_linear_trend(group["eta"].to_numpy(), group["error"].to_numpy())
        fits.append({"seed": int(seed), **fit})

    positive = df[df["bound"] > 0]
    K = float((positive["error"] / positive["bound"]).max()) if len(positive) else float("nan")
    return pd.DataFrame(fits), K


def main() -> None:
    """Run the sweep described by this directory's config.yaml and print the fits."""
    with open(Path(__file__).with_name("config.yaml"), encoding="utf-8") as fh:
        cfg = yaml.safe_load(fh)

    print("=" * 60)
    print("PARCS - STABILITY SWEEP")
    print("=" * 60)

    df = stability_sweep(
        seeds=range(int(cfg["seeds"])),
        etas=[float(e) for e in cfg["etas"]],
        n=int(cfg["n"]),
        s=int(cfg["s"]),
        m=int(cfg["m"]),
        algorithm=cfg.get("algorithm", "admm"),
    )
    fits, K = summarize_stability(df)

    print(f"\n📈 {len(fits)} certified instance(s)")
    print(f"  - Positive slopes: {int((fits['slope'] > 0).sum())}/{len(fits)}")
    print(f"  - Max residual ratio: {fits['residual_ratio'].max():.3f}")
    print(f"  - Calibrated K: {K:.3f}")
    print("=" * 60)


if __name__ == "__main__":
    main()
