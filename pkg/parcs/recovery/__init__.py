"""
Noise-constrained l1 recovery and recovery quality measures.
"""

from .bpdn import (
    ALGORITHMS,
    NoiseBallProjector,
    RecoveryResult,
    SolverConfig,
    l1_norm,
    operator_norm,
    soft_threshold,
    solve_bpdn,
)
from .quality import relative_error, sigma_s, stability_bound, success

__all__ = [
    "ALGORITHMS",
    "SolverConfig",
    "RecoveryResult",
    "NoiseBallProjector",
    "soft_threshold",
    "l1_norm",
    "operator_norm",
    "solve_bpdn",
    "relative_error",
    "success",
    "sigma_s",
    "stability_bound",
]
