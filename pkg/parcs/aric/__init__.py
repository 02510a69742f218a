"""
Empirical asymmetric restricted isometry constants.
"""

from .estimates import (
    RECOVERY_RATIO_THRESHOLD,
    AricEstimate,
    AricMethod,
    aric_exhaustive,
    aric_profile,
    aric_sampled,
    recovery_sufficient,
    symmetric_ric,
)

__all__ = [
    "RECOVERY_RATIO_THRESHOLD",
    "AricEstimate",
    "AricMethod",
    "aric_exhaustive",
    "aric_sampled",
    "aric_profile",
    "recovery_sufficient",
    "symmetric_ric",
]
