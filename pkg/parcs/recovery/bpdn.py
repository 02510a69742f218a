"""
Quadratically constrained basis pursuit:

    minimize ||z||_1  subject to  ||A z - y||_2 <= eta

over complex z, where ||z||_1 = sum_j |z_j| (magnitude-coupled soft-thresholding).
The default solver is ADMM with an exact projection onto the feasible set, so
every returned iterate is feasible; a Chambolle-Pock primal-dual solver is
available as an alternative.
"""

import time
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy import linalg as sp_linalg
from scipy.optimize import brentq

from ..config import Config
from ..exceptions import LengthMismatchError, SolverError, ValidationError
from ..monitoring.logger import get_logger
from ..monitoring.metrics import MetricsCollector

logger = get_logger(__name__)

ALGORITHMS = ("admm", "pdhg")

# Residual balancing for the ADMM penalty
PENALTY_GAP = 10.0
PENALTY_FACTOR = 2.0
PENALTY_ADAPT_ITERATIONS = 500


@dataclass(frozen=True)
class SolverConfig:
    """Solver parameters."""

    eta: float = 0.0
    max_iterations: int = Config.MAX_ITERATIONS
    primal_tol: float = Config.PRIMAL_TOL
    feasibility_tol: float = Config.FEASIBILITY_TOL
    algorithm: str = "admm"
    algorithm_note: str = "ADMM with exact projection onto the noise ball"

    def __post_init__(self) -> None:
        if self.eta < 0:
            raise ValidationError(f"eta must be non-negative, got {self.eta}")
        if self.primal_tol <= 0 or self.feasibility_tol <= 0:
            raise ValidationError("solver tolerances must be positive")
        if self.max_iterations < 1:
            raise ValidationError(f"max_iterations must be at least 1, got {self.max_iterations}")
        if self.algorithm not in ALGORITHMS:
            raise ValidationError(f"unknown algorithm '{self.algorithm}' (choose from {ALGORITHMS})")


@dataclass(eq=False)
class RecoveryResult:
    """Solver output."""

    x_hat: np.ndarray
    iterations: int
    final_feasibility_gap: float
    objective: float
    converged: bool
    objective_history: List[float] = field(default_factory=list)
    eta_effective: float = 0.0
    algorithm: str = "admm"


def soft_threshold(v: np.ndarray, t: float) -> np.ndarray:
    """Prox of t ||.||_1 for complex vectors: shrink each modulus by t."""
    mag = np.abs(v)
    scale = np.maximum(1.0 - t / np.maximum(mag, np.finfo(float).tiny), 0.0)
    return v * scale


def l1_norm(z: np.ndarray) -> float:
    return float(np.sum(np.abs(z)))


class NoiseBallProjector:
    """
    Euclidean projection onto {w : ||A w - y||_2 <= eta} through a thin SVD of A.

    If eta is below dist(y, range A) the set is empty; eta is raised to that
    distance and the projection lands on the least-squares set.
    """

    def __init__(self, A: np.ndarray, y: np.ndarray, eta: float, slack: float = 0.0):
        P, sigma, Qh = sp_linalg.svd(A, full_matrices=False)
        cutoff = sigma[0] * max(A.shape) * np.finfo(float).eps if sigma.size else 0.0
        rank = int(np.sum(sigma > cutoff))

        self.sigma = sigma[:rank]
        self.Q = Qh[:rank].conj().T
        self.Qh = Qh[:rank]
        self.b = P[:, :rank].conj().T @ y

        residual = y - P[:, :rank] @ self.b
        self.distance = float(np.linalg.norm(residual))
        self.eta_effective = max(float(eta), self.distance)

        if self.distance > eta + slack:
            logger.warning(
                f"eta={eta:.3e} is below dist(y, range A)={self.distance:.3e}; "
                f"using eta={self.eta_effective:.3e}"
            )

        # Radius left for the in-range part of the residual
        self.radius = float(np.sqrt(max(self.eta_effective**2 - self.distance**2, 0.0)))

    def project(self, v: np.ndarray) -> np.ndarray:
        c = self.Qh @ v
        gap = self.sigma * c - self.b
        if np.linalg.norm(gap) <= self.radius:
            return v

        if self.radius == 0.0:
            a = self.b / self.sigma
        else:
            weights = np.abs(gap) ** 2
            sigma_sq = self.sigma**2

            def excess(mu: float) -> float:
                return float(np.sum(weights / (1.0 + mu * sigma_sq) ** 2)) - self.radius**2

            upper = 1.0
            while excess(upper) > 0:
                upper *= 2.0
                if upper > 1e300:
                    raise SolverError("noise-ball projection multiplier diverged")
            mu = brentq(excess, 0.0, upper, xtol=1e-300, rtol=4 * np.finfo(float).eps)
            a = (c + mu * self.sigma * self.b) / (1.0 + mu * sigma_sq)

        return v - self.Q @ (c - a)


def operator_norm(
    A: np.ndarray, iterations: int = 500, seed: Optional[int] = 0, rtol: float = 1e-10
) -> float:
    """
    Power-method estimate of ||A||_2.

    Args:
        A: Matrix
        iterations: Iteration cap
        seed: Seed of the starting vector
        rtol: Stop once successive estimates agree to this relative tolerance

    Returns:
        Largest singular value estimate
    """
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(A.shape[1])
    if np.iscomplexobj(A):
        v = v + 1j * rng.standard_normal(A.shape[1])
    v /= np.linalg.norm(v)

    estimate = 0.0
    for _ in range(iterations):
        w = A.conj().T @ (A @ v)
        w_norm = np.linalg.norm(w)
        if w_norm == 0.0:
            return 0.0
        new_estimate = float(np.sqrt(w_norm))
        v = w / w_norm
        if abs(new_estimate - estimate) <= rtol * new_estimate:
            return new_estimate
        estimate = new_estimate
    return estimate


def _feasibility_gap(A: np.ndarray, y: np.ndarray, z: np.ndarray, eta: float) -> float:
    return max(float(np.linalg.norm(A @ z - y)) - eta, 0.0)


def _admm(A: np.ndarray, y: np.ndarray, cfg: SolverConfig) -> RecoveryResult:
    projector = NoiseBallProjector(A, y, cfg.eta, slack=cfg.feasibility_tol)
    N = A.shape[1]
    dtype = np.result_type(A, y, np.float64)

    z = projector.project(np.zeros(N, dtype=dtype))
    u = np.zeros(N, dtype=dtype)
    rho = 1.0

    abs_tol = 1e-3 * cfg.primal_tol * np.sqrt(N)
    history: List[float] = []
    best = np.inf
    converged = False
    iteration = 0

    for iteration in range(1, cfg.max_iterations + 1):
        x = soft_threshold(z - u, 1.0 / rho)
        z_new = projector.project(x + u)

        r = x - z_new
        s = rho * (z_new - z)
        u = u + r
        z = z_new

        best = min(best, l1_norm(z))
        history.append(best)

        r_norm = np.linalg.norm(r)
        s_norm = np.linalg.norm(s)
        r_thresh = abs_tol + cfg.primal_tol * max(np.linalg.norm(x), np.linalg.norm(z))
        s_thresh = abs_tol + cfg.primal_tol * rho * np.linalg.norm(u)

        if r_norm <= r_thresh and s_norm <= s_thresh:
            converged = True
            break

        if iteration <= PENALTY_ADAPT_ITERATIONS:
            # u is the scaled dual y / rho; keep y fixed when rho changes
            if r_norm > PENALTY_GAP * s_norm:
                rho *= PENALTY_FACTOR
                u = u / PENALTY_FACTOR
            elif s_norm > PENALTY_GAP * r_norm:
                rho /= PENALTY_FACTOR
                u = u * PENALTY_FACTOR

    gap = _feasibility_gap(A, y, z, projector.eta_effective)
    return RecoveryResult(
        x_hat=z,
        iterations=iteration,
        final_feasibility_gap=gap,
        objective=l1_norm(z),
        converged=converged and gap <= cfg.feasibility_tol,
        objective_history=history,
        eta_effective=projector.eta_effective,
        algorithm="admm",
    )


def _pdhg(A: np.ndarray, y: np.ndarray, cfg: SolverConfig) -> RecoveryResult:
    projector = NoiseBallProjector(A, y, cfg.eta, slack=cfg.feasibility_tol)
    eta = projector.eta_effective
    N = A.shape[1]
    dtype = np.result_type(A, y, np.float64)

    norm = operator_norm(A)
    if norm == 0.0:
        raise SolverError("measurement matrix is zero")
    tau = sigma = 0.99 / norm

    x = np.zeros(N, dtype=dtype)
    x_bar = x.copy()
    p = np.zeros(A.shape[0], dtype=dtype)

    history: List[float] = []
    best = np.inf
    converged = False
    iteration = 0

    for iteration in range(1, cfg.max_iterations + 1):
        # Dual step: prox of sigma G^* via Moreau, G the indicator of the ball B(y, eta)
        q = p + sigma * (A @ x_bar)
        center = q / sigma - y
        radius = np.linalg.norm(center)
        if radius > eta:
            center = center * (eta / radius)
        p = q - sigma * (y + center)

        x_new = soft_threshold(x - tau * (A.conj().T @ p), tau)
        x_bar = 2.0 * x_new - x
        step = np.linalg.norm(x_new - x)
        x = x_new

        gap = _feasibility_gap(A, y, x, eta)
        if gap <= cfg.feasibility_tol:
            best = min(best, l1_norm(x))
        history.append(best)

        if step <= cfg.primal_tol * max(1.0, np.linalg.norm(x)) and gap <= cfg.feasibility_tol:
            converged = True
            break

    gap = _feasibility_gap(A, y, x, eta)
    return RecoveryResult(
        x_hat=x,
        iterations=iteration,
        final_feasibility_gap=gap,
        objective=l1_norm(x),
        converged=converged,
        objective_history=history,
        eta_effective=eta,
        algorithm="pdhg",
    )


def solve_bpdn(
    A: np.ndarray,
    y: np.ndarray,
    cfg: Optional[SolverConfig] = None,
    metrics: Optional[MetricsCollector] = None,
) -> RecoveryResult:
    """
    Solve min ||z||_1 subject to ||A z - y||_2 <= eta.

    Args:
        A: m x N measurement matrix (real or complex)
        y: Length-m measurements
        cfg: Solver configuration (defaults to SolverConfig())
        metrics: Optional collector for solve counts and timings

    Returns:
        RecoveryResult (best available iterate with converged=False on non-convergence)
    """
    cfg = cfg or SolverConfig()
    A = np.asarray(A)
    y = np.asarray(y).ravel()
    if A.ndim != 2 or y.shape[0] != A.shape[0]:
        raise LengthMismatchError(f"y has length {y.shape[0]} but A has shape {A.shape}")

    start = time.perf_counter()
    result = _admm(A, y, cfg) if cfg.algorithm == "admm" else _pdhg(A, y, cfg)
    elapsed = time.perf_counter() - start

    if metrics is not None:
        metrics.record_solve(result.converged, result.iterations)
        metrics.record_timer("solve_bpdn", elapsed)

    if not result.converged:
        logger.debug(
            f"{cfg.algorithm} stopped after {result.iterations} iterations without meeting "
            f"tolerances (gap={result.final_feasibility_gap:.2e})"
        )
    return result
