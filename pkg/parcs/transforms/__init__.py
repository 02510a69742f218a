"""
Unitary sparsity bases and their fast apply paths.
"""

from .bases import (
    BasisKind,
    UnitaryBasis,
    apply,
    apply_adjoint,
    basis_from_string,
    build_basis,
    dft_matrix,
    unitarity_defect,
)

__all__ = [
    "BasisKind",
    "UnitaryBasis",
    "build_basis",
    "basis_from_string",
    "apply",
    "apply_adjoint",
    "unitarity_defect",
    "dft_matrix",
]
