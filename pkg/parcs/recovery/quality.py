"""
Recovery quality measures.
"""

from typing import Optional

import numpy as np

from ..config import Config
from ..exceptions import LengthMismatchError, ValidationError


def relative_error(x: np.ndarray, x_hat: np.ndarray) -> float:
    """
    ||x - x_hat||_2 / ||x||_2, or ||x_hat||_2 when x = 0.

    Args:
        x: Ground truth
        x_hat: Estimate

    Returns:
        Relative error
    """
    x = np.asarray(x).ravel()
    x_hat = np.asarray(x_hat).ravel()
    if x.shape != x_hat.shape:
        raise LengthMismatchError(f"shapes differ: {x.shape} vs {x_hat.shape}")

    norm = np.linalg.norm(x)
    if norm == 0.0:
        return float(np.linalg.norm(x_hat))
    return float(np.linalg.norm(x - x_hat) / norm)


def success(x: np.ndarray, x_hat: np.ndarray, tol: Optional[float] = None) -> bool:
    """Relative error strictly below tol; for x = 0 only x_hat = 0 succeeds."""
    tol = Config.SUCCESS_TOL if tol is None else tol
    if not np.any(np.asarray(x)):
        return not np.any(np.asarray(x_hat))
    return relative_error(x, x_hat) < tol


def sigma_s(x: np.ndarray, s: int) -> float:
    """
    Best s-term approximation error in l1: the sum of the n - s smallest moduli.

    Args:
        x: Vector
        s: Sparsity

    Returns:
        sigma_s(x)_1
    """
    if s < 0:
        raise ValidationError(f"sparsity must be non-negative, got s={s}")
    mags = np.sort(np.abs(np.asarray(x).ravel()))
    keep = min(s, mags.size)
    return float(np.sum(mags[: mags.size - keep]))


def stability_bound(x: np.ndarray, s: int, eta: float, alpha_2s: float) -> float:
    """sigma_s(x) / sqrt(s) + eta / sqrt(alpha_2s), the error scale without its constant."""
    if s < 1 or alpha_2s <= 0:
        raise ValidationError(f"need s >= 1 and alpha_2s > 0, got s={s}, alpha_2s={alpha_2s}")
    return sigma_s(x, s) / np.sqrt(s) + eta / np.sqrt(alpha_2s)
