"""
Coherence constants of a profile set against a sparsity basis.

All four Gamma/Xi constants carry the alpha^-1/2 prefactor of their definition.
Pass ``prefactor=False`` to get the raw value.
"""

from typing import Tuple, Union

import numpy as np

from ..exceptions import DivisibilityError, LengthMismatchError
from ..profiles.profile_set import ProfileSet, ProfileStructure
from ..transforms.bases import UnitaryBasis

BasisLike = Union[UnitaryBasis, np.ndarray]


def basis_matrix(U: BasisLike) -> np.ndarray:
    """Dense matrix of a basis given as UnitaryBasis or as an explicit square array."""
    if isinstance(U, UnitaryBasis):
        return U.matrix
    M = np.asarray(U, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise LengthMismatchError(f"basis must be a square matrix, got shape {M.shape}")
    return M


def _scale(p: ProfileSet, value: float, prefactor: bool) -> float:
    return value / np.sqrt(p.alpha) if prefactor else value


def _weights_and_basis(p: ProfileSet, U: BasisLike) -> Tuple[np.ndarray, np.ndarray]:
    """
    Express a diagonal or circulant set as (weights, V) with H_c U = diag(w_c) V up to a unitary.

    Circulant H_c = F^* diag(lambda_c) F, so ||H_c U z|| = ||diag(lambda_c) F U z||.
    """
    M = basis_matrix(U)
    if M.shape[0] != p.n:
        raise LengthMismatchError(f"profile dimension {p.n} does not match basis dimension {M.shape[0]}")
    if p.structure is ProfileStructure.CIRCULANT:
        return p.data, np.fft.fft(M, axis=0, norm="ortho")
    return p.data, M


def _stacked_products(p: ProfileSet, U: BasisLike) -> np.ndarray:
    """(C, n, n) array of H_c U for dense sets."""
    M = basis_matrix(U)
    if M.shape[0] != p.n:
        raise LengthMismatchError(f"profile dimension {p.n} does not match basis dimension {M.shape[0]}")
    return p.data @ M


def coherence(U: BasisLike) -> float:
    """mu(U) = max_ij |u_ij|^2."""
    return float(np.max(np.abs(basis_matrix(U)) ** 2))


def gamma_distinct(p: ProfileSet, U: BasisLike, prefactor: bool = True) -> float:
    """
    alpha^-1/2 max_c max_j ||H_c U e_j||_2.

    Args:
        p: Profile set
        U: Sparsity basis
        prefactor: Include the alpha^-1/2 factor

    Returns:
        Gamma_distinct
    """
    if p.structure is ProfileStructure.DENSE:
        column_sq = np.sum(np.abs(_stacked_products(p, U)) ** 2, axis=1)
    else:
        w, V = _weights_and_basis(p, U)
        # ||diag(w_c) v_j||^2 = sum_i |w_ci|^2 |v_ij|^2
        column_sq = (np.abs(w) ** 2) @ (np.abs(V) ** 2)

    return _scale(p, float(np.sqrt(column_sq.max())), prefactor)


def xi_distinct(p: ProfileSet, prefactor: bool = True) -> float:
    """alpha^-1/2 max_c ||H_c||_2."""
    if p.structure is ProfileStructure.DENSE:
        norms = np.linalg.norm(p.data, 2, axis=(1, 2))
        value = float(norms.max())
    else:
        value = float(np.abs(p.data).max())
    return _scale(p, value, prefactor)


def identical_column_norms(p: ProfileSet, U: BasisLike) -> np.ndarray:
    """
    Spectral norms ||[H_1 U e_j, ..., H_C U e_j]||_2 for every j.

    Args:
        p: Profile set
        U: Sparsity basis

    Returns:
        Length-n array of raw per-column norms
    """
    if p.structure is ProfileStructure.DENSE:
        HU = _stacked_products(p, U)
        # B[j] is the n x C matrix whose columns are H_c U e_j
        B = np.transpose(HU, (2, 1, 0))
        return np.linalg.norm(B, 2, axis=(1, 2))

    w, V = _weights_and_basis(p, U)
    # C x C Gram per column: G_j[c, d] = sum_i conj(w_ci) w_di |v_ij|^2
    gram = np.einsum("ci,di,ij->jcd", w.conj(), w, np.abs(V) ** 2, optimize=True)
    top = np.linalg.eigvalsh(gram)[:, -1]
    return np.sqrt(np.clip(top, 0.0, None))


def gamma_identical(p: ProfileSet, U: BasisLike, prefactor: bool = True) -> float:
    """alpha^-1/2 max_j ||[H_1 U e_j, ..., H_C U e_j]||_2."""
    return _scale(p, float(identical_column_norms(p, U).max()), prefactor)


def xi_identical(p: ProfileSet, prefactor: bool = True) -> float:
    """alpha^-1/2 ||[H_1, ..., H_C]||_2 = alpha^-1/2 sqrt(||sum H_c H_c^*||_2)."""
    if p.structure is ProfileStructure.DENSE:
        H = p.data
        outer = np.einsum("cik,cjk->ij", H, H.conj())
        top = float(np.linalg.eigvalsh(outer)[-1])
    else:
        top = float(np.max(np.sum(np.abs(p.data) ** 2, axis=0)))
    return _scale(p, float(np.sqrt(max(top, 0.0))), prefactor)


def gamma_bar_block(U: BasisLike, C: int) -> float:
    """
    sqrt(C) max_c max_j ||U_c e_j||_2 over the C row blocks U_c of U.

    Args:
        U: Sparsity basis
        C: Number of row blocks (must divide n)

    Returns:
        Block coherence constant
    """
    M = basis_matrix(U)
    n = M.shape[0]
    if C < 1 or n % C != 0:
        raise DivisibilityError(f"block count C={C} must divide n={n}")
    block_sq = np.sum((np.abs(M) ** 2).reshape(C, n // C, n), axis=1)
    return float(np.sqrt(C) * np.sqrt(block_sq.max()))


def mu_tilde(U: BasisLike, C: int) -> float:
    """min{sqrt(mu(U) n), sqrt(C)}."""
    n = basis_matrix(U).shape[0]
    return float(min(np.sqrt(coherence(U) * n), np.sqrt(C)))
