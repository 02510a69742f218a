"""
Sensor profile sets and their joint near-isometry constants.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from ..config import Config
from ..exceptions import LengthMismatchError, SingularGramError, StructureError


class ProfileStructure(str, Enum):
    """How the profile matrices H_c are stored."""

    DIAGONAL = "diagonal"  # data[c] = diagonal of H_c
    CIRCULANT = "circulant"  # data[c] = DFT eigenvalues of H_c
    DENSE = "dense"  # data[c] = H_c


@dataclass(frozen=True, eq=False)
class ProfileSet:
    """
    C sensor profiles H_1..H_C acting on C^n.

    ``alpha`` and ``beta`` are the extreme eigenvalues of C^-1 sum H_c^* H_c and
    are filled in by ``make_profile_set``; construct through that function (or a
    family constructor) rather than directly.
    """

    structure: ProfileStructure
    data: np.ndarray
    alpha: float
    beta: float
    family: str = "custom"

    @property
    def C(self) -> int:
        return int(self.data.shape[0])

    @property
    def n(self) -> int:
        return int(self.data.shape[1])

    @property
    def condition(self) -> float:
        """beta / alpha."""
        return self.beta / self.alpha

    def matrices(self) -> np.ndarray:
        """Materialize H_1..H_C as a (C, n, n) complex array."""
        if self.structure is ProfileStructure.DENSE:
            return np.array(self.data, dtype=np.complex128, copy=True)

        if self.structure is ProfileStructure.DIAGONAL:
            out = np.zeros((self.C, self.n, self.n), dtype=np.complex128)
            idx = np.arange(self.n)
            out[:, idx, idx] = self.data
            return out

        # H_c = F^* diag(lambda_c) F with F the unitary DFT
        F = np.fft.fft(np.eye(self.n, dtype=np.complex128), axis=0, norm="ortho")
        return np.fft.ifft(self.data[:, :, None] * F[None, :, :], axis=1, norm="ortho")

    def apply(self, c: int, X: np.ndarray) -> np.ndarray:
        """
        Compute H_c X without materializing H_c.

        Args:
            c: Sensor index (0-based)
            X: Vector of length n or array with n rows

        Returns:
            H_c X
        """
        X = np.asarray(X)
        if X.shape[0] != self.n:
            raise LengthMismatchError(f"expected {self.n} rows, got shape {X.shape}")

        d = self.data[c]
        if self.structure is ProfileStructure.DIAGONAL:
            return d * X if X.ndim == 1 else d[:, None] * X
        if self.structure is ProfileStructure.CIRCULANT:
            lam = d if X.ndim == 1 else d[:, None]
            return np.fft.ifft(lam * np.fft.fft(X, axis=0), axis=0)
        return d @ X

    def gram_average(self) -> np.ndarray:
        """Explicit C^-1 sum H_c^* H_c (n x n)."""
        H = self.matrices()
        return np.einsum("cki,ckj->ij", H.conj(), H) / self.C

    def __repr__(self) -> str:
        return (
            f"ProfileSet(family={self.family}, structure={self.structure.value}, "
            f"C={self.C}, n={self.n}, alpha={self.alpha:.6g}, beta={self.beta:.6g})"
        )


def _gram_extremes(structure: ProfileStructure, data: np.ndarray) -> Tuple[float, float]:
    if structure is ProfileStructure.DENSE:
        gram = np.einsum("cki,ckj->ij", data.conj(), data) / data.shape[0]
        eigs = np.linalg.eigvalsh(gram)
        low, high = float(eigs[0]), float(eigs[-1])
    else:
        # Diagonal in the canonical (resp. Fourier) domain: eigenvalues are entrywise
        pointwise = np.mean(np.abs(data) ** 2, axis=0)
        low, high = float(pointwise.min()), float(pointwise.max())

    if low <= Config.SINGULAR_GRAM_THRESHOLD:
        raise SingularGramError(
            f"profile Gram average is singular (min eigenvalue {low:.3e})"
        )
    return low, high


def make_profile_set(
    structure: ProfileStructure, data: np.ndarray, family: str = "custom"
) -> ProfileSet:
    """
    Build a ProfileSet, computing alpha and beta eagerly.

    Args:
        structure: Storage structure
        data: (C, n) array for diagonal/circulant, (C, n, n) for dense
        family: Family label used in reports

    Returns:
        ProfileSet
    """
    structure = ProfileStructure(structure)
    data = np.array(data, dtype=np.complex128, copy=True)

    expected_ndim = 3 if structure is ProfileStructure.DENSE else 2
    if data.ndim != expected_ndim or data.shape[0] < 1 or data.shape[1] < 1:
        raise LengthMismatchError(
            f"{structure.value} profiles need a {expected_ndim}-D array, got shape {data.shape}"
        )
    if structure is ProfileStructure.DENSE and data.shape[1] != data.shape[2]:
        raise LengthMismatchError(f"profile matrices must be square, got shape {data.shape[1:]}")

    data.setflags(write=False)
    alpha, beta = _gram_extremes(structure, data)
    return ProfileSet(structure=structure, data=data, alpha=alpha, beta=beta, family=family)


def joint_near_isometry(p: ProfileSet) -> Tuple[float, float]:
    """
    Extreme eigenvalues (alpha, beta) of C^-1 sum H_c^* H_c.

    Diagonal and circulant sets are handled entrywise without forming matrices.
    """
    return _gram_extremes(p.structure, p.data)


def support_mask(p: ProfileSet, threshold: Optional[float] = None) -> np.ndarray:
    """Boolean (C, n) mask of |(h_c)_i| > threshold for diagonal sets."""
    if p.structure is not ProfileStructure.DIAGONAL:
        raise StructureError("supports are only defined for diagonal profiles")
    threshold = Config.SUPPORT_THRESHOLD if threshold is None else threshold
    return np.abs(p.data) > threshold


def overlap_degree(p: ProfileSet) -> int:
    """
    Overlap degree q: the largest number of sensors whose support meets a given sensor's.

    Args:
        p: Diagonal profile set

    Returns:
        q (1 for non-overlapping profiles, C when every support is full)
    """
    S = support_mask(p).astype(np.int64)
    intersects = (S @ S.T) > 0
    return int(intersects.sum(axis=1).max())


def is_normal(p: ProfileSet, tol: float = 1e-10) -> bool:
    """Whether every H_c commutes with its adjoint."""
    if p.structure is not ProfileStructure.DENSE:
        return True
    H = p.data
    Hh = np.conj(np.transpose(H, (0, 2, 1)))
    return bool(np.max(np.abs(H @ Hh - Hh @ H)) <= tol)
