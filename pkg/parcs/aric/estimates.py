"""
Asymmetric restricted isometry constants (alpha_s, beta_s) of a matrix.

alpha_s and beta_s are the extremes of ||A x||^2 / ||x||^2 over s-sparse x. The
exhaustive estimator enumerates every s-subset of columns; the sampled estimator
draws random s-sparse vectors and therefore brackets the true constants from
inside.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, islice
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..config import Config
from ..exceptions import CombinatorialBlowupError, ValidationError
from ..monitoring.logger import get_logger

logger = get_logger(__name__)

RECOVERY_RATIO_THRESHOLD = (math.sqrt(2.0) + 1.0) / (math.sqrt(2.0) - 1.0)
EXHAUSTIVE_CHUNK = 4096
SAMPLED_BATCH = 2048


class AricMethod(str, Enum):
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class AricEstimate:
    """Estimated ARICs of order s."""

    s: int
    alpha_s: float
    beta_s: float
    method: AricMethod
    supports_checked: int

    @property
    def ratio(self) -> float:
        """beta_s / alpha_s (inf when alpha_s = 0)."""
        if self.alpha_s <= 0.0:
            return math.inf
        return self.beta_s / self.alpha_s


def _validate(A: np.ndarray, s: int) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2:
        raise ValidationError(f"expected a matrix, got shape {A.shape}")
    if not 1 <= s <= A.shape[1]:
        raise ValidationError(f"order must lie in [1, {A.shape[1]}], got s={s}")
    return A


def _subset_chunks(N: int, s: int, size: int) -> Iterator[np.ndarray]:
    subsets = combinations(range(N), s)
    while True:
        chunk = list(islice(subsets, size))
        if not chunk:
            return
        yield np.asarray(chunk, dtype=np.intp)


def _chunk_extremes(A: np.ndarray, supports: np.ndarray) -> Tuple[float, float]:
    # (B, m, s) stack of column submatrices
    sub = np.transpose(A[:, supports], (1, 0, 2))
    sv = np.linalg.svd(sub, compute_uv=False)
    low = 0.0 if supports.shape[1] > A.shape[0] else float(np.min(sv[:, -1]) ** 2)
    return low, float(np.max(sv[:, 0]) ** 2)


def aric_exhaustive(
    A: np.ndarray,
    s: int,
    workers: Optional[int] = None,
    guard: Optional[int] = None,
) -> AricEstimate:
    """
    Exact ARICs by enumerating every s-column submatrix.

    Args:
        A: m x N matrix
        s: Sparsity order
        workers: Thread cap (defaults to Config.worker_count())
        guard: Maximum number of subsets (defaults to Config.ARIC_EXHAUSTIVE_GUARD)

    Returns:
        AricEstimate with method EXHAUSTIVE
    """
    A = _validate(A, s)
    N = A.shape[1]
    guard = Config.ARIC_EXHAUSTIVE_GUARD if guard is None else guard

    total = math.comb(N, s)
    if total > guard:
        raise CombinatorialBlowupError(
            f"C({N}, {s}) = {total} subsets exceeds the exhaustive guard {guard}; use aric_sampled"
        )

    alpha, beta = math.inf, 0.0
    chunks = _subset_chunks(N, s, EXHAUSTIVE_CHUNK)
    with ThreadPoolExecutor(max_workers=Config.worker_count(workers)) as pool:
        for low, high in pool.map(lambda idx: _chunk_extremes(A, idx), chunks):
            alpha = min(alpha, low)
            beta = max(beta, high)

    logger.debug(f"Exhaustive ARIC s={s}: alpha={alpha:.6g} beta={beta:.6g} over {total} subsets")
    return AricEstimate(
        s=s, alpha_s=alpha, beta_s=beta, method=AricMethod.EXHAUSTIVE, supports_checked=total
    )


def aric_sampled(
    A: np.ndarray,
    s: int,
    trials: int,
    seed: Optional[int] = None,
    batch_size: int = SAMPLED_BATCH,
) -> AricEstimate:
    """
    Inner bracket of the ARICs from random unit s-sparse vectors.

    Supports are uniform s-subsets and coefficients Gaussian (complex when A is
    complex). Supports and coefficients come from separate streams consumed in
    order, so the first k draws are the same for every trials >= k.

    Args:
        A: m x N matrix
        s: Sparsity order
        trials: Number of random draws (at least 1)
        seed: RNG seed
        batch_size: Draws evaluated per vectorized batch

    Returns:
        AricEstimate with method SAMPLED (alpha_s >= true alpha_s, beta_s <= true beta_s)
    """
    A = _validate(A, s)
    if trials < 1:
        raise ValidationError(f"need at least one trial, got {trials}")

    N = A.shape[1]
    support_ss, coeff_ss = np.random.SeedSequence(seed).spawn(2)
    support_rng = np.random.default_rng(support_ss)
    coeff_rng = np.random.default_rng(coeff_ss)
    complex_draws = np.iscomplexobj(A)

    alpha, beta = math.inf, 0.0
    remaining = trials
    while remaining > 0:
        B = min(batch_size, remaining)
        supports = np.argsort(support_rng.random((B, N)), axis=1)[:, :s]
        if complex_draws:
            parts = coeff_rng.standard_normal((B, s, 2))
            coeffs = parts[..., 0] + 1j * parts[..., 1]
        else:
            coeffs = coeff_rng.standard_normal((B, s))

        # y_b = A[:, S_b] c_b
        y = np.einsum("mbs,bs->bm", A[:, supports], coeffs)
        ratios = np.sum(np.abs(y) ** 2, axis=1) / np.sum(np.abs(coeffs) ** 2, axis=1)

        alpha = min(alpha, float(ratios.min()))
        beta = max(beta, float(ratios.max()))
        remaining -= B

    return AricEstimate(
        s=s, alpha_s=alpha, beta_s=beta, method=AricMethod.SAMPLED, supports_checked=trials
    )


def recovery_sufficient(est: AricEstimate) -> bool:
    """beta_2s / alpha_2s < (sqrt(2) + 1) / (sqrt(2) - 1)."""
    return est.ratio < RECOVERY_RATIO_THRESHOLD


def symmetric_ric(est: AricEstimate) -> Tuple[float, float]:
    """
    Symmetric constant after rescaling A by t = sqrt(2 / (alpha + beta)).

    Returns:
        (delta, t) with delta = (beta - alpha) / (beta + alpha)
    """
    total = est.alpha_s + est.beta_s
    if total <= 0.0:
        raise ValidationError("ARICs are both zero")
    return (est.beta_s - est.alpha_s) / total, math.sqrt(2.0 / total)


def aric_profile(
    A: np.ndarray,
    orders: Sequence[int],
    method: str = "auto",
    trials: int = 100_000,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
) -> List[AricEstimate]:
    """
    Estimate ARICs at several orders.

    Args:
        A: m x N matrix
        orders: Sparsity orders
        method: "exhaustive", "sampled" or "auto" (exhaustive within the guard)
        trials: Random draws per order for sampled estimation
        seed: RNG seed for sampled estimation
        workers: Thread cap for exhaustive estimation

    Returns:
        One AricEstimate per order
    """
    if method not in ("auto", "exhaustive", "sampled"):
        raise ValidationError(f"unknown ARIC method '{method}'")

    N = np.asarray(A).shape[1]
    estimates = []
    for s in orders:
        exhaustive = method == "exhaustive" or (
            method == "auto" and math.comb(N, s) <= Config.ARIC_EXHAUSTIVE_GUARD
        )
        if exhaustive:
            estimates.append(aric_exhaustive(A, s, workers=workers))
        else:
            estimates.append(aric_sampled(A, s, trials, seed=seed))
    return estimates
