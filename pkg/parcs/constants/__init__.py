"""
Coherence constants, bound chains and sufficient measurement conditions.
"""

from .bounds import (
    BoundChainResult,
    BoundCheck,
    diagonal_bounds,
    rademacher_gamma_bound,
    verify_bound_chains,
)
from .conditions import (
    ABSOLUTE_CONSTANT,
    ConditionMode,
    ConstantsReport,
    constants_row,
    log_factor_l1,
    log_factor_l2,
    measurement_condition_report,
    solve_l1_fixed_point,
)
from .gammas import (
    basis_matrix,
    coherence,
    gamma_bar_block,
    gamma_distinct,
    gamma_identical,
    identical_column_norms,
    mu_tilde,
    xi_distinct,
    xi_identical,
)

__all__ = [
    "basis_matrix",
    "coherence",
    "gamma_distinct",
    "xi_distinct",
    "gamma_identical",
    "identical_column_norms",
    "xi_identical",
    "gamma_bar_block",
    "mu_tilde",
    "BoundCheck",
    "BoundChainResult",
    "diagonal_bounds",
    "rademacher_gamma_bound",
    "verify_bound_chains",
    "ABSOLUTE_CONSTANT",
    "ConditionMode",
    "ConstantsReport",
    "measurement_condition_report",
    "solve_l1_fixed_point",
    "log_factor_l1",
    "log_factor_l2",
    "constants_row",
]
