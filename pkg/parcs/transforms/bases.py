"""
Unitary sparsity bases: canonical, Fourier, cosine and 4-stage Haar.

A basis U maps coefficients x to signals f = U x. ``apply`` evaluates U x and
``apply_adjoint`` evaluates U* y through fast transforms; ``matrix`` is only
built when asked for.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np
from scipy import fft as sp_fft

from ..exceptions import (
    DimensionUnsupportedError,
    InvalidDimensionError,
    LengthMismatchError,
    ValidationError,
)
from ..monitoring.logger import get_logger

logger = get_logger(__name__)

HAAR_LEVELS = 4
HAAR_MIN_LOG2 = 5
_INV_SQRT2 = 1.0 / np.sqrt(2.0)


class BasisKind(str, Enum):
    """Supported sparsity bases (values are the CLI strings)."""

    CANONICAL = "canonical"
    FOURIER = "fourier"
    COSINE = "cosine"
    HAAR = "haar"


@dataclass(frozen=True)
class UnitaryBasis:
    """An n x n unitary sparsity transform."""

    kind: BasisKind
    n: int
    wavelet_levels: int = 0

    @cached_property
    def matrix(self) -> np.ndarray:
        """Dense complex matrix of U (columns are U e_j)."""
        if self.kind is BasisKind.CANONICAL:
            return np.eye(self.n, dtype=np.complex128)
        return apply(self, np.eye(self.n, dtype=np.complex128))

    def __repr__(self) -> str:
        return f"UnitaryBasis(kind={self.kind.value}, n={self.n})"


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


def build_basis(kind: BasisKind, n: int) -> UnitaryBasis:
    """
    Construct a unitary basis.

    Args:
        kind: Basis kind (enum member or its string value)
        n: Dimension

    Returns:
        UnitaryBasis
    """
    kind = BasisKind(kind)
    n = int(n)

    if n < 2:
        raise InvalidDimensionError(f"basis dimension must be at least 2, got {n}")

    levels = 0
    if kind is BasisKind.HAAR:
        if not _is_power_of_two(n) or n.bit_length() - 1 < HAAR_MIN_LOG2:
            raise DimensionUnsupportedError(
                f"Haar basis needs n = 2^k with k >= {HAAR_MIN_LOG2}, got n={n}"
            )
        levels = HAAR_LEVELS

    logger.debug(f"Built {kind.value} basis with n={n}")
    return UnitaryBasis(kind=kind, n=n, wavelet_levels=levels)


def basis_from_string(name: str, n: int) -> UnitaryBasis:
    """Build a basis from its CLI name ({canonical, fourier, cosine, haar})."""
    try:
        kind = BasisKind(name.strip().lower())
    except ValueError:
        choices = ", ".join(k.value for k in BasisKind)
        raise ValidationError(f"unknown basis '{name}' (choose from {choices})") from None
    return build_basis(kind, n)


def _check_length(U: UnitaryBasis, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x)
    if x.ndim not in (1, 2) or x.shape[0] != U.n:
        raise LengthMismatchError(f"expected leading dimension {U.n}, got shape {x.shape}")
    return x


def _real_transform(func, x: np.ndarray) -> np.ndarray:
    # scipy's real-to-real transforms are applied to each part separately
    if np.iscomplexobj(x):
        return func(x.real) + 1j * func(x.imag)
    return func(x)


def _haar_analysis(x: np.ndarray, levels: int) -> np.ndarray:
    out = np.array(x, dtype=np.result_type(x, np.float64), copy=True)
    length = out.shape[0]
    for _ in range(levels):
        even = out[0:length:2].copy()
        odd = out[1:length:2].copy()
        half = length // 2
        out[:half] = (even + odd) * _INV_SQRT2
        out[half:length] = (even - odd) * _INV_SQRT2
        length = half
    return out


def _haar_synthesis(c: np.ndarray, levels: int) -> np.ndarray:
    out = np.array(c, dtype=np.result_type(c, np.float64), copy=True)
    n = out.shape[0]
    length = n >> levels
    for _ in range(levels):
        approx = out[:length].copy()
        detail = out[length : 2 * length].copy()
        out[0 : 2 * length : 2] = (approx + detail) * _INV_SQRT2
        out[1 : 2 * length : 2] = (approx - detail) * _INV_SQRT2
        length *= 2
    return out


def apply(U: UnitaryBasis, x: np.ndarray) -> np.ndarray:
    """
    Compute U x for a vector or for every column of a 2-D array.

    Args:
        U: Basis
        x: Coefficients, shape (n,) or (n, k)

    Returns:
        Signal-domain array of the same shape
    """
    x = _check_length(U, x)

    if U.kind is BasisKind.CANONICAL:
        return x.copy()
    if U.kind is BasisKind.FOURIER:
        return np.fft.ifft(x, axis=0, norm="ortho")
    if U.kind is BasisKind.COSINE:
        return _real_transform(lambda v: sp_fft.idct(v, type=2, axis=0, norm="ortho"), x)
    return _haar_synthesis(x, U.wavelet_levels)


def apply_adjoint(U: UnitaryBasis, y: np.ndarray) -> np.ndarray:
    """
    Compute U* y for a vector or for every column of a 2-D array.

    Args:
        U: Basis
        y: Signal-domain array, shape (n,) or (n, k)

    Returns:
        Coefficient array of the same shape
    """
    y = _check_length(U, y)

    if U.kind is BasisKind.CANONICAL:
        return y.copy()
    if U.kind is BasisKind.FOURIER:
        return np.fft.fft(y, axis=0, norm="ortho")
    if U.kind is BasisKind.COSINE:
        return _real_transform(lambda v: sp_fft.dct(v, type=2, axis=0, norm="ortho"), y)
    return _haar_analysis(y, U.wavelet_levels)


def unitarity_defect(U: UnitaryBasis) -> float:
    """Max-entry deviation of U*U from the identity."""
    M = U.matrix
    return float(np.max(np.abs(M.conj().T @ M - np.eye(U.n))))


def dft_matrix(n: int) -> np.ndarray:
    """Unitary forward DFT matrix F (F x = fft(x, norm='ortho'))."""
    return np.fft.fft(np.eye(n, dtype=np.complex128), axis=0, norm="ortho")