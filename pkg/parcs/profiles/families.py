"""
Sensor profile families.

Every diagonal family is normalized so that C^-1 sum |h_c|^2 = 1 pointwise, which
makes the joint near-isometry constants alpha = beta = 1.
"""

from typing import Sequence, Union

import numpy as np

from ..exceptions import (
    CountTooSmallError,
    DivisibilityError,
    LengthMismatchError,
    StructureError,
    ValidationError,
)
from ..monitoring.logger import get_logger
from .profile_set import ProfileSet, ProfileStructure, make_profile_set

logger = get_logger(__name__)

FAMILIES = ("partitioned", "banded", "global", "rademacher", "identity")

Seed = Union[int, np.random.SeedSequence, None]


def _check_counts(C: int, n: int, minimum_C: int = 1) -> None:
    if n < 1:
        raise ValidationError(f"dimension must be positive, got n={n}")
    if C < minimum_C:
        raise CountTooSmallError(f"need at least {minimum_C} sensor(s), got C={C}")


def _check_divides(C: int, n: int) -> None:
    if n % C != 0:
        raise DivisibilityError(f"sensor count C={C} must divide n={n}")


def perfectly_partitioned(C: int, n: int) -> ProfileSet:
    """
    Non-overlapping block profiles H_c = sqrt(C) P_{I_c}.

    Args:
        C: Sensor count (must divide n)
        n: Dimension

    Returns:
        Diagonal ProfileSet with alpha = beta = 1
    """
    _check_counts(C, n)
    _check_divides(C, n)

    block = n // C
    h = np.zeros((C, n), dtype=np.complex128)
    for c in range(C):
        h[c, c * block : (c + 1) * block] = np.sqrt(C)

    return make_profile_set(ProfileStructure.DIAGONAL, h, family="partitioned")


def banded_cosine(C: int, n: int) -> ProfileSet:
    """
    Overlapping banded profiles: a truncated cosine bump per block times a phase ramp.

    Sensor c (1-based) has magnitude cos(pi (i + 1/2 - t_c) / (2b)) on
    |i + 1/2 - t_c| < b, with block length b = n / C and centre t_c = (c - 1/2) b.
    Magnitudes are renormalized pointwise so that C^-1 sum |h_c|^2 = 1. The phase
    of entry i (0-based) is (c - 1) 2 pi / C + (i + 1) 2 pi / (n C), so sensor c
    covers the half-open arc ((c - 1) 2 pi / C, c 2 pi / C].

    Args:
        C: Sensor count (at least 2, must divide n)
        n: Dimension

    Returns:
        Diagonal ProfileSet with overlap degree at most 3
    """
    _check_counts(C, n, minimum_C=2)
    _check_divides(C, n)

    b = n // C
    positions = np.arange(n) + 0.5
    centres = (np.arange(C) + 0.5) * b

    offset = positions[None, :] - centres[:, None]
    magnitude = np.where(np.abs(offset) < b, np.cos(np.pi * offset / (2.0 * b)), 0.0)
    magnitude = np.sqrt(C) * magnitude / np.sqrt(np.sum(magnitude**2, axis=0))[None, :]

    phase = (
        np.arange(C)[:, None] * 2.0 * np.pi / C
        + (np.arange(n)[None, :] + 1) * 2.0 * np.pi / (n * C)
    )

    return make_profile_set(
        ProfileStructure.DIAGONAL, magnitude * np.exp(1j * phase), family="banded"
    )


def globally_spread(C: int, n: int, seed: Seed = None) -> ProfileSet:
    """
    Unimodular profiles with i.i.d. uniform phases exp(i phi), phi ~ U[0, 2 pi).

    |exp(i phi)| is 1 only to rounding, so alpha, beta and Xi_distinct equal 1
    within a few ulp (tests use 1e-12), not bit for bit.

    Args:
        C: Sensor count
        n: Dimension
        seed: RNG seed

    Returns:
        Diagonal ProfileSet with alpha = beta = 1
    """
    _check_counts(C, n)
    rng = np.random.default_rng(seed)
    phi = rng.uniform(0.0, 2.0 * np.pi, size=(C, n))
    return make_profile_set(ProfileStructure.DIAGONAL, np.exp(1j * phi), family="global")


def rademacher_diagonal(C: int, n: int, seed: Seed = None) -> ProfileSet:
    """
    Diagonal profiles with i.i.d. +-1 entries.

    Args:
        C: Sensor count
        n: Dimension
        seed: RNG seed

    Returns:
        Diagonal ProfileSet with alpha = beta = 1
    """
    _check_counts(C, n)
    rng = np.random.default_rng(seed)
    signs = rng.integers(0, 2, size=(C, n)) * 2 - 1
    return make_profile_set(ProfileStructure.DIAGONAL, signs, family="rademacher")


def identity_profiles(C: int, n: int) -> ProfileSet:
    """H_1 = ... = H_C = I."""
    _check_counts(C, n)
    return make_profile_set(ProfileStructure.DIAGONAL, np.ones((C, n)), family="identity")


def circulant_from_eigs(eigs: Sequence[np.ndarray], family: str = "circulant") -> ProfileSet:
    """
    Circulant profiles H_c = F^* diag(lambda_c) F from their DFT eigenvalues.

    Args:
        eigs: One eigenvalue vector per sensor, all of length n
        family: Family label

    Returns:
        Circulant ProfileSet
    """
    vectors = [np.asarray(lam, dtype=np.complex128).ravel() for lam in eigs]
    if not vectors:
        raise CountTooSmallError("need at least one eigenvalue vector")
    lengths = {v.shape[0] for v in vectors}
    if len(lengths) != 1:
        raise LengthMismatchError(f"eigenvalue vectors differ in length: {sorted(lengths)}")

    return make_profile_set(ProfileStructure.CIRCULANT, np.stack(vectors), family=family)


def dense_profiles(matrices: Sequence[np.ndarray], family: str = "dense") -> ProfileSet:
    """Arbitrary square profile matrices."""
    stack = np.stack([np.asarray(H, dtype=np.complex128) for H in matrices])
    return make_profile_set(ProfileStructure.DENSE, stack, family=family)


def block_shift_witness(C: int, block: int) -> ProfileSet:
    """
    Dense profiles [H_c]_{a,b} = sqrt(C) delta_{a,1} delta_{b,c} I_block on n = C * block.

    Each H_c moves block c into block 1. The Gram average is the identity while
    the identical universal constant reaches its upper bound C.
    """
    _check_counts(C, block)
    n = C * block
    H = np.zeros((C, n, n), dtype=np.complex128)
    eye = np.sqrt(C) * np.eye(block)
    for c in range(C):
        H[c, :block, c * block : (c + 1) * block] = eye
    return make_profile_set(ProfileStructure.DENSE, H, family="block-shift")


def as_circulant(p: ProfileSet) -> ProfileSet:
    """Move a diagonal family into the eigenvalue domain (lambda_c = h_c)."""
    if p.structure is ProfileStructure.CIRCULANT:
        return p
    if p.structure is not ProfileStructure.DIAGONAL:
        raise StructureError("only diagonal profile sets have a circulant counterpart")
    return circulant_from_eigs(list(p.data), family=f"{p.family}-circulant")


def build_profiles(
    family: str,
    C: int,
    n: int,
    seed: Seed = None,
    circulant: bool = False,
) -> ProfileSet:
    """
    Build a profile family from its CLI name.

    Args:
        family: One of partitioned, banded, global, rademacher, identity
        C: Sensor count
        n: Dimension
        seed: RNG seed for random families
        circulant: Move the construction into the eigenvalue domain

    Returns:
        ProfileSet
    """
    name = family.strip().lower()
    if name == "partitioned":
        p = perfectly_partitioned(C, n)
    elif name == "banded":
        p = banded_cosine(C, n)
    elif name == "global":
        p = globally_spread(C, n, seed)
    elif name == "rademacher":
        p = rademacher_diagonal(C, n, seed)
    elif name == "identity":
        p = identity_profiles(C, n)
    else:
        choices = ", ".join(FAMILIES)
        raise ValidationError(f"unknown profile family '{family}' (choose from {choices})")

    logger.debug(f"Built {p!r}")
    return as_circulant(p) if circulant else p
