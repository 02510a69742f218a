"""
Configuration management for the parcs toolkit.
Loads ambient settings from the environment and provides numerical defaults.
"""

import os
from typing import List, Optional, Tuple

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


class Config:
    """Centralized configuration management."""

    # Environment-backed settings cover logging only. Experiment parameters
    # always come from CLI flags or config files.
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOGS_DIR: Optional[str] = os.getenv("PARCS_LOGS_DIR") or None

    # Solver defaults
    PRIMAL_TOL: float = 1e-7
    FEASIBILITY_TOL: float = 1e-7
    MAX_ITERATIONS: int = 20000

    # Numerical thresholds
    SUPPORT_THRESHOLD: float = 1e-12
    SINGULAR_GRAM_THRESHOLD: float = 1e-14

    # ARIC estimation
    ARIC_EXHAUSTIVE_GUARD: int = 10**6

    # Phase-transition protocol
    SUCCESS_TOL: float = 1e-3
    TRANSITION_LEVEL: float = 0.5

    # Workers (None means available cores)
    DEFAULT_WORKERS: Optional[int] = None

    @classmethod
    def worker_count(cls, requested: Optional[int] = None) -> int:
        """
        Resolve the number of workers to use.

        Args:
            requested: Explicit worker cap (defaults to DEFAULT_WORKERS or cpu count)

        Returns:
            Positive worker count
        """
        workers = requested or cls.DEFAULT_WORKERS or os.cpu_count() or 1
        return max(1, int(workers))

    @classmethod
    def validate(cls) -> Tuple[bool, List[str]]:
        """
        Validate the numerical defaults.

        Returns:
            Tuple of (is_valid, list of problems)
        """
        problems = []

        if cls.PRIMAL_TOL <= 0 or cls.FEASIBILITY_TOL <= 0:
            problems.append("solver tolerances must be positive")

        if cls.MAX_ITERATIONS < 1:
            problems.append("MAX_ITERATIONS must be at least 1")

        if cls.ARIC_EXHAUSTIVE_GUARD < 1:
            problems.append("ARIC_EXHAUSTIVE_GUARD must be at least 1")

        if not 0 < cls.SUCCESS_TOL < 1:
            problems.append(f"SUCCESS_TOL={cls.SUCCESS_TOL} outside (0, 1)")

        if not 0 < cls.TRANSITION_LEVEL <= 1:
            problems.append(f"TRANSITION_LEVEL={cls.TRANSITION_LEVEL} outside (0, 1]")

        return len(problems) == 0, problems
