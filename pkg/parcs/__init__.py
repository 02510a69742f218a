"""
Parallel-acquisition compressed sensing toolkit.

Sensor profiles, theory constants, measurement ensembles, ARIC estimation and
noise-constrained l1 recovery for multi-sensor compressed sensing.
"""

__version__ = "0.1.0"
