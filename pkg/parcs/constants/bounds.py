"""
Bound chains relating the coherence constants, and closed-form bounds for diagonal profiles.
"""

from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from ..config import Config
from ..monitoring.logger import get_logger
from ..profiles.profile_set import ProfileSet, ProfileStructure, is_normal
from .gammas import (
    BasisLike,
    basis_matrix,
    coherence,
    gamma_distinct,
    gamma_identical,
    xi_distinct,
    xi_identical,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class BoundCheck:
    """One named inequality lhs <= rhs."""

    name: str
    lhs: float
    rhs: float
    holds: bool


@dataclass
class BoundChainResult:
    """Outcome of every inequality evaluated for one (profiles, basis) pair."""

    checks: List[BoundCheck] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(check.holds for check in self.checks)

    @property
    def failures(self) -> List[BoundCheck]:
        return [check for check in self.checks if not check.holds]

    def add(self, name: str, lhs: float, rhs: float, tol: float) -> None:
        self.checks.append(BoundCheck(name=name, lhs=lhs, rhs=rhs, holds=lhs <= rhs + tol))

    def as_dict(self) -> Dict[str, bool]:
        return {check.name: check.holds for check in self.checks}


def _overlap_from_weights(w: np.ndarray) -> int:
    S = (np.abs(w) > Config.SUPPORT_THRESHOLD).astype(np.int64)
    return int(((S @ S.T) > 0).sum(axis=1).max())


def _effective_coherence(p: ProfileSet, U: BasisLike) -> float:
    M = basis_matrix(U)
    if p.structure is ProfileStructure.CIRCULANT:
        M = np.fft.fft(M, axis=0, norm="ortho")
    return coherence(M)


def diagonal_bounds(p: ProfileSet, U: BasisLike) -> Dict[str, float]:
    """
    Closed-form bounds for diagonal (or circulant, via lambda_c and F U) profile sets.

    Args:
        p: Diagonal or circulant profile set
        U: Sparsity basis

    Returns:
        Dictionary of bound values keyed by name
    """
    if p.structure is ProfileStructure.DENSE:
        return {}

    w = p.data
    mu = _effective_coherence(p, U)
    inv_sqrt_alpha = 1.0 / np.sqrt(p.alpha)
    max_l2 = float(np.max(np.linalg.norm(w, axis=1)))
    q = _overlap_from_weights(w)

    return {
        "mu": mu,
        "q": float(q),
        "gamma_distinct_upper": inv_sqrt_alpha * np.sqrt(mu) * max_l2,
        "xi_distinct_exact": inv_sqrt_alpha * float(np.abs(w).max()),
        "gamma_identical_lower": float(np.sqrt(mu * p.C)),
        "gamma_identical_upper_overlap": inv_sqrt_alpha * np.sqrt(mu * q) * max_l2,
        "identical_upper_worst": float(np.sqrt(p.beta / p.alpha) * np.sqrt(p.C)),
        "xi_identical_lower": float(np.sqrt(p.C)),
    }


def rademacher_gamma_bound(
    n: int, C: int, mu: float, eps: float, alpha: float = 1.0, c: float = 1.0
) -> float:
    """
    High-probability ceiling on Gamma_identical for Rademacher diagonal profiles.

    alpha^-1/2 (sqrt(n) + sqrt(C) + sqrt(2 ln(2/eps) / c)) sqrt(mu); the absolute
    constant c is unknown and defaults to 1.
    """
    return float(
        (np.sqrt(n) + np.sqrt(C) + np.sqrt(2.0 * np.log(2.0 / eps) / c)) * np.sqrt(mu) / np.sqrt(alpha)
    )


def verify_bound_chains(p: ProfileSet, U: BasisLike, tol: float = 1e-9) -> BoundChainResult:
    """
    Evaluate every inequality relating the four constants for one input.

    Args:
        p: Profile set
        U: Sparsity basis
        tol: Absolute slack allowed on each inequality

    Returns:
        BoundChainResult
    """
    g_d = gamma_distinct(p, U)
    x_d = xi_distinct(p)
    g_i = gamma_identical(p, U)
    x_i = xi_identical(p)
    ratio = np.sqrt(p.beta / p.alpha)

    result = BoundChainResult()
    result.add("1 <= gamma_distinct", 1.0, g_d, tol)
    result.add("gamma_distinct <= xi_distinct", g_d, x_d, tol)
    result.add("xi_distinct <= sqrt(beta/alpha) sqrt(C)", x_d, ratio * np.sqrt(p.C), tol)
    result.add("gamma_distinct <= gamma_identical", g_d, g_i, tol)
    result.add("gamma_identical <= xi_identical", g_i, x_i, tol)
    result.add("xi_identical <= sqrt(beta/alpha) C", x_i, ratio * p.C, tol)
    result.add("xi_distinct <= xi_identical", x_d, x_i, tol)

    if is_normal(p):
        result.add("normal: xi_identical <= sqrt(beta/alpha) sqrt(C)", x_i, ratio * np.sqrt(p.C), tol)

    diag = diagonal_bounds(p, U)
    if diag:
        result.add("diagonal: gamma_distinct <= upper", g_d, diag["gamma_distinct_upper"], tol)
        result.add("diagonal: xi_distinct == max |h|", x_d, diag["xi_distinct_exact"], tol)
        result.add("diagonal: max |h| == xi_distinct", diag["xi_distinct_exact"], x_d, tol)
        result.add("diagonal: lower <= gamma_identical", diag["gamma_identical_lower"], g_i, tol)
        result.add(
            "diagonal: gamma_identical <= overlap upper",
            g_i,
            diag["gamma_identical_upper_overlap"],
            tol,
        )
        result.add("diagonal: gamma_identical <= worst", g_i, diag["identical_upper_worst"], tol)
        result.add("diagonal: sqrt(C) <= xi_identical", diag["xi_identical_lower"], x_i, tol)

    if not result.all_hold:
        names = ", ".join(check.name for check in result.failures)
        logger.warning(f"Bound chain violated for {p!r}: {names}")

    return result
