"""
Stability experiment: recovery error against the noise level.
"""

from .sweep import (
    DEFAULT_ETAS,
    certified_matrix,
    fit_linear_trend,
    stability_sweep,
    summarize_stability,
)

__all__ = [
    "DEFAULT_ETAS",
    "certified_matrix",
    "fit_linear_trend",
    "stability_sweep",
    "summarize_stability",
]
