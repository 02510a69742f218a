"""
Squared coherence constants against the sensor count.
"""

from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from parcs.constants import constants_row
from parcs.monitoring.logger import get_logger
from parcs.monitoring.metrics import MetricsCollector
from parcs.profiles import build_profiles
from parcs.transforms import basis_from_string

logger = get_logger(__name__)

RANDOM_FAMILIES = ("global", "rademacher")
CONSTANT_COLUMNS = ("gamma_distinct_sq", "gamma_identical_sq", "xi_distinct_sq", "xi_identical_sq")


def constants_sweep(
    family: str,
    basis: str,
    C_list: Sequence[int],
    n: int,
    seed: int = 0,
    trials: int = 1,
    circulant: bool = False,
    metrics: Optional[MetricsCollector] = None,
) -> pd.DataFrame:
    """
    Compute the four squared constants for each sensor count.

    Random families are averaged over `trials` profile draws; deterministic
    families are evaluated once.

    Args:
        family: Profile family name
        basis: Basis name
        C_list: Sensor counts
        n: Dimension
        seed: Master seed (draw t of count C uses spawn_key (C, t))
        trials: Draws per count for random families
        circulant: Use circulant profiles
        metrics: Optional collector for per-count timings

    Returns:
        DataFrame with columns C, basis, family, circulant, draws and the squared
        constants
    """
    U = basis_from_string(basis, n)
    draws = max(1, int(trials)) if family in RANDOM_FAMILIES else 1

    rows: List[Dict[str, object]] = []
    for C in C_list:
        values = []
        for t in range(draws):
            ss = np.random.SeedSequence(seed, spawn_key=(int(C), t))
            p = build_profiles(family, int(C), n, seed=ss, circulant=circulant)
            values.append(constants_row(p, U, family=family))

        frame = pd.DataFrame(values)
        row: Dict[str, object] = {
            "C": int(C),
            "basis": U.kind.value,
            "family": family,
            "circulant": bool(circulant),
            "draws": draws,
        }
        for column in CONSTANT_COLUMNS:
            row[column] = float(frame[column].mean())
        rows.append(row)

        if metrics is not None:
            metrics.increment_counter("constants_rows")
        logger.debug(f"Constants C={C}: {row}")

    logger.info(f"Constants sweep {family}/{basis} n={n}: {len(rows)} sensor counts")
    return pd.DataFrame(rows)
