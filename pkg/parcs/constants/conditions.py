"""
Sufficient measurement conditions evaluated from the coherence constants.

Every condition hides an unspecified absolute constant; it is pinned to 1 and
the report says so.
"""

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from ..exceptions import ValidationError
from ..monitoring.logger import get_logger
from ..profiles.profile_set import ProfileSet
from ..transforms.bases import UnitaryBasis
from .gammas import (
    BasisLike,
    basis_matrix,
    coherence,
    gamma_bar_block,
    gamma_distinct,
    gamma_identical,
    mu_tilde,
    xi_distinct,
    xi_identical,
)

logger = get_logger(__name__)

ABSOLUTE_CONSTANT = 1.0
FIXED_POINT_MAX_ITERATIONS = 50


class ConditionMode(str, Enum):
    """Which sufficient condition to evaluate."""

    DISTINCT = "distinct-nonuniversal"
    DISTINCT_UNIVERSAL = "distinct-universal"
    IDENTICAL = "identical-nonuniversal"
    IDENTICAL_UNIVERSAL = "identical-universal"
    DISTINCT_VARIED = "distinct-varied"
    BLOCK_DIAGONAL = "block-diagonal"


@dataclass(frozen=True)
class ConstantsReport:
    """All constants for one (profiles, basis, s) triple plus the evaluated condition."""

    gamma_distinct: float
    xi_distinct: float
    gamma_identical: float
    xi_identical: float
    coherence_mu: float
    gamma_bar: float
    mu_tilde: float
    alpha: float
    beta: float
    C: int
    n: int
    s: int
    basis_kind: str
    mode: str
    delta: float
    eps: float
    log_factor: float
    required_m: float
    per_sensor_rows: float
    fixed_point_iterations: int
    absolute_constant: float = ABSOLUTE_CONSTANT
    absolute_constant_pinned: bool = True
    raw: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def log_factor_l1(s: int, n: int, m: float, eps: float) -> float:
    """ln^2(2s) ln(2n) ln(2m) + ln(2/eps)."""
    m = max(float(m), 1.0)
    return float(np.log(2 * s) ** 2 * np.log(2 * n) * np.log(2 * m) + np.log(2.0 / eps))


def log_factor_l2(s: int, n: int, eps: float) -> float:
    """ln(2n/s) + ln(2/eps) / s."""
    return float(np.log(2.0 * n / s) + np.log(2.0 / eps) / s)


def solve_l1_fixed_point(
    prefactor: float, s: int, n: int, eps: float, max_iterations: int = FIXED_POINT_MAX_ITERATIONS
) -> Dict[str, float]:
    """
    Solve m = prefactor * L1(m) by fixed-point iteration.

    Starting from m = 1 the iterates increase monotonically to the smallest
    fixed point.

    Args:
        prefactor: Everything multiplying L1 in the condition
        s: Sparsity
        n: Dimension
        eps: Failure probability
        max_iterations: Iteration cap

    Returns:
        Dictionary with m, log_factor and iterations
    """
    m = 1.0
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        m_next = prefactor * log_factor_l1(s, n, m, eps)
        if abs(m_next - m) <= 1e-9 * max(1.0, m_next):
            m = m_next
            break
        m = m_next
    else:
        logger.warning(f"L1 fixed point did not settle after {max_iterations} iterations (m={m:.6g})")

    return {"m": m, "log_factor": log_factor_l1(s, n, m, eps), "iterations": iterations}


def measurement_condition_report(
    p: ProfileSet,
    U: BasisLike,
    s: int,
    delta: float = 0.5,
    eps: float = 0.01,
    mode: ConditionMode = ConditionMode.DISTINCT,
) -> ConstantsReport:
    """
    Evaluate every constant and the right-hand side of the requested condition.

    Args:
        p: Profile set
        U: Sparsity basis
        s: Sparsity
        delta: ARIP deviation factor in (0, 1)
        eps: Failure probability in (0, 1)
        mode: Condition to evaluate

    Returns:
        ConstantsReport (required_m is the total row count, absolute constant = 1)
    """
    mode = ConditionMode(mode)
    n = p.n
    if not 1 <= s <= n:
        raise ValidationError(f"sparsity must lie in [1, {n}], got s={s}")
    if not 0 < delta < 1 or not 0 < eps < 1:
        raise ValidationError(f"delta and eps must lie in (0, 1), got delta={delta}, eps={eps}")

    M = basis_matrix(U)
    g_d = gamma_distinct(p, M)
    x_d = xi_distinct(p)
    g_i = gamma_identical(p, M)
    x_i = xi_identical(p)
    mu = coherence(M)
    g_bar = gamma_bar_block(M, p.C) if n % p.C == 0 else float("nan")
    m_tilde = mu_tilde(M, p.C)

    condition = p.beta / p.alpha
    base = s / delta**2
    iterations = 0

    if mode in (ConditionMode.DISTINCT_UNIVERSAL, ConditionMode.IDENTICAL_UNIVERSAL):
        xi = x_d if mode is ConditionMode.DISTINCT_UNIVERSAL else x_i
        log_factor = log_factor_l2(s, n, eps)
        required = ABSOLUTE_CONSTANT * base * condition * xi**2 * log_factor
    else:
        if mode is ConditionMode.BLOCK_DIAGONAL:
            if np.isnan(g_bar):
                raise ValidationError(f"block-diagonal condition needs C | n (C={p.C}, n={n})")
            prefactor = ABSOLUTE_CONSTANT * base * g_bar**2
        else:
            gamma = g_i if mode is ConditionMode.IDENTICAL else g_d
            prefactor = ABSOLUTE_CONSTANT * base * condition * gamma**2
        solution = solve_l1_fixed_point(prefactor, s, n, eps)
        required = solution["m"]
        log_factor = solution["log_factor"]
        iterations = int(solution["iterations"])

    per_sensor = required / p.C

    sqrt_alpha = float(np.sqrt(p.alpha))
    raw = {
        "gamma_distinct": g_d * sqrt_alpha,
        "xi_distinct": x_d * sqrt_alpha,
        "gamma_identical": g_i * sqrt_alpha,
        "xi_identical": x_i * sqrt_alpha,
    }

    basis_kind = U.kind.value if isinstance(U, UnitaryBasis) else "custom"
    logger.debug(
        f"{mode.value}: C={p.C} n={n} s={s} basis={basis_kind} required m ~ {required:.4g} "
        f"(absolute constant pinned to {ABSOLUTE_CONSTANT})"
    )

    return ConstantsReport(
        gamma_distinct=g_d,
        xi_distinct=x_d,
        gamma_identical=g_i,
        xi_identical=x_i,
        coherence_mu=mu,
        gamma_bar=g_bar,
        mu_tilde=m_tilde,
        alpha=p.alpha,
        beta=p.beta,
        C=p.C,
        n=n,
        s=s,
        basis_kind=basis_kind,
        mode=mode.value,
        delta=delta,
        eps=eps,
        log_factor=log_factor,
        required_m=required,
        per_sensor_rows=per_sensor,
        fixed_point_iterations=iterations,
        raw=raw,
    )


def constants_row(p: ProfileSet, U: BasisLike, family: Optional[str] = None) -> Dict[str, Any]:
    """Squared constants for one sweep row."""
    basis_kind = U.kind.value if isinstance(U, UnitaryBasis) else "custom"
    return {
        "C": p.C,
        "basis": basis_kind,
        "family": family or p.family,
        "gamma_distinct_sq": gamma_distinct(p, U) ** 2,
        "gamma_identical_sq": gamma_identical(p, U) ** 2,
        "xi_distinct_sq": xi_distinct(p) ** 2,
        "xi_identical_sq": xi_identical(p) ** 2,
    }
