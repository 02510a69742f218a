"""
Constants sweep: squared coherence constants against the number of sensors.
"""

from .sweep import CONSTANT_COLUMNS, RANDOM_FAMILIES, constants_sweep

__all__ = ["CONSTANT_COLUMNS", "RANDOM_FAMILIES", "constants_sweep"]
