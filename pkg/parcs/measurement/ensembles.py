"""
Measurement matrix assembly for distinct, identical and block-diagonal sampling.

Seeds: a master seed splits into per-sensor streams SeedSequence(seed, spawn_key=(c,)).
Identical sampling draws its single shared matrix from stream 0, so both
architectures agree at C = 1.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from ..exceptions import DivisibilityError, EmptySensorError, LengthMismatchError, ValidationError
from ..monitoring.logger import get_logger
from ..profiles.profile_set import ProfileSet
from ..transforms.bases import UnitaryBasis

logger = get_logger(__name__)

SeedLike = Union[int, np.random.SeedSequence]


class SamplingMode(str, Enum):
    """Sampling architecture."""

    DISTINCT = "distinct"
    DISTINCT_VARIED = "distinct-varied"
    IDENTICAL = "identical"
    BLOCK_DIAGONAL = "block-diagonal"


class EntryDistribution(str, Enum):
    """Distribution of the subgaussian entries."""

    GAUSSIAN = "gaussian"
    RADEMACHER = "rademacher"


@dataclass(frozen=True, eq=False)
class MeasurementEnsemble:
    """Stacked, scaled measurement matrix A with its provenance."""

    matrix: np.ndarray
    mode: SamplingMode
    row_counts: Tuple[int, ...]
    seed: Optional[int]
    entry_dist: EntryDistribution
    profile_ref: str = ""
    basis_ref: str = ""

    @property
    def m(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def n(self) -> int:
        return int(self.matrix.shape[1])

    @property
    def C(self) -> int:
        return len(self.row_counts)

    def block(self, c: int) -> np.ndarray:
        """Rows belonging to sensor c (0-based)."""
        start = int(sum(self.row_counts[:c]))
        return self.matrix[start : start + self.row_counts[c]]


def sensor_seed(seed: SeedLike, stream: int) -> np.random.SeedSequence:
    """Independent child stream ``stream`` of a master seed."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.SeedSequence(seed.entropy, spawn_key=tuple(seed.spawn_key) + (stream,))
    return np.random.SeedSequence(seed, spawn_key=(stream,))


def _seed_value(seed: SeedLike) -> Optional[int]:
    if isinstance(seed, np.random.SeedSequence):
        return None if seed.spawn_key else int(seed.entropy)
    return int(seed)


def subgaussian_matrix(
    rows: int,
    cols: int,
    dist: EntryDistribution = EntryDistribution.GAUSSIAN,
    seed: Optional[SeedLike] = None,
) -> np.ndarray:
    """
    Matrix of i.i.d. zero-mean unit-variance entries.

    Args:
        rows: Number of rows (0 gives an empty matrix)
        cols: Number of columns
        dist: Gaussian or Rademacher entries
        seed: Seed or SeedSequence

    Returns:
        Real (rows, cols) float64 array
    """
    if rows < 0 or cols < 0:
        raise ValidationError(f"matrix shape must be non-negative, got ({rows}, {cols})")

    rng = np.random.default_rng(seed)
    dist = EntryDistribution(dist)
    if dist is EntryDistribution.GAUSSIAN:
        return rng.standard_normal((rows, cols))
    return rng.integers(0, 2, size=(rows, cols)).astype(np.float64) * 2.0 - 1.0


def _check_basis(p: ProfileSet, U: UnitaryBasis) -> None:
    if p.n != U.n:
        raise LengthMismatchError(f"profile dimension {p.n} does not match basis dimension {U.n}")


def _profile_times_basis(p: ProfileSet, U: UnitaryBasis, c: int) -> np.ndarray:
    HU = p.apply(c, U.matrix)
    # Keep real products real so ensembles of real profiles and bases stay real
    if not np.any(HU.imag):
        return np.ascontiguousarray(HU.real)
    return HU


def _equal_counts(C: int, m: int) -> Tuple[int, ...]:
    if m < 1:
        raise ValidationError(f"row count must be positive, got m={m}")
    if m % C != 0:
        raise DivisibilityError(f"sensor count C={C} must divide m={m}")
    return (m // C,) * C


def _refs(p: Optional[ProfileSet], U: UnitaryBasis) -> Tuple[str, str]:
    profile_ref = f"{p.family}/{p.structure.value}/C={p.C}" if p is not None else ""
    return profile_ref, f"{U.kind.value}/n={U.n}"


def assemble_distinct_varied(
    p: ProfileSet,
    U: UnitaryBasis,
    row_counts: Sequence[int],
    dist: EntryDistribution = EntryDistribution.GAUSSIAN,
    seed: SeedLike = 0,
    mode: SamplingMode = SamplingMode.DISTINCT_VARIED,
) -> MeasurementEnsemble:
    """
    Distinct sampling with per-sensor row counts: block c is (C m_c)^-1/2 A_c H_c U.

    Args:
        p: Profile set
        U: Sparsity basis
        row_counts: m_1..m_C, all at least 1
        dist: Entry distribution
        seed: Master seed (sensor c uses stream c)
        mode: Recorded sampling mode

    Returns:
        MeasurementEnsemble
    """
    _check_basis(p, U)
    counts = tuple(int(m_c) for m_c in row_counts)
    if len(counts) != p.C:
        raise LengthMismatchError(f"need {p.C} row counts, got {len(counts)}")
    if any(m_c < 0 for m_c in counts):
        raise ValidationError(f"row counts must be non-negative, got {counts}")
    if any(m_c == 0 for m_c in counts):
        raise EmptySensorError(f"every sensor needs at least one row, got {counts}")

    blocks = []
    for c, m_c in enumerate(counts):
        A_c = subgaussian_matrix(m_c, p.n, dist, sensor_seed(seed, c))
        blocks.append((1.0 / np.sqrt(p.C * m_c)) * (A_c @ _profile_times_basis(p, U, c)))

    profile_ref, basis_ref = _refs(p, U)
    return MeasurementEnsemble(
        matrix=np.vstack(blocks),
        mode=SamplingMode(mode),
        row_counts=counts,
        seed=_seed_value(seed),
        entry_dist=EntryDistribution(dist),
        profile_ref=profile_ref,
        basis_ref=basis_ref,
    )


def assemble_distinct(
    p: ProfileSet,
    U: UnitaryBasis,
    m: int,
    dist: EntryDistribution = EntryDistribution.GAUSSIAN,
    seed: SeedLike = 0,
) -> MeasurementEnsemble:
    """
    Distinct sampling: A = m^-1/2 [A_1 H_1 U; ...; A_C H_C U] with independent A_c.

    Args:
        p: Profile set
        U: Sparsity basis
        m: Total rows (C must divide m)
        dist: Entry distribution
        seed: Master seed

    Returns:
        MeasurementEnsemble
    """
    counts = _equal_counts(p.C, m)
    return assemble_distinct_varied(p, U, counts, dist, seed, mode=SamplingMode.DISTINCT)


def assemble_identical(
    p: ProfileSet,
    U: UnitaryBasis,
    m: int,
    dist: EntryDistribution = EntryDistribution.GAUSSIAN,
    seed: SeedLike = 0,
) -> MeasurementEnsemble:
    """
    Identical sampling: A = m^-1/2 [A H_1 U; ...; A H_C U] with one shared A.

    Args:
        p: Profile set
        U: Sparsity basis
        m: Total rows (C must divide m)
        dist: Entry distribution
        seed: Master seed (the shared matrix uses stream 0)

    Returns:
        MeasurementEnsemble
    """
    _check_basis(p, U)
    counts = _equal_counts(p.C, m)

    shared = subgaussian_matrix(counts[0], p.n, dist, sensor_seed(seed, 0))
    scale = 1.0 / np.sqrt(p.C * counts[0])
    blocks = [scale * (shared @ _profile_times_basis(p, U, c)) for c in range(p.C)]

    profile_ref, basis_ref = _refs(p, U)
    return MeasurementEnsemble(
        matrix=np.vstack(blocks),
        mode=SamplingMode.IDENTICAL,
        row_counts=counts,
        seed=_seed_value(seed),
        entry_dist=EntryDistribution(dist),
        profile_ref=profile_ref,
        basis_ref=basis_ref,
    )


def block_diagonal_factor(
    C: int,
    m: int,
    n: int,
    dist: EntryDistribution = EntryDistribution.GAUSSIAN,
    seed: SeedLike = 0,
) -> np.ndarray:
    """
    sqrt(C/m) blockdiag(Phi_1, ..., Phi_C), the factor in front of U.

    Phi_c is the column block I_c of an (m/C) x n draw from stream c, which lines
    the blocks up with distinct sampling under perfectly partitioned profiles.
    """
    if C < 1:
        raise ValidationError(f"sensor count must be positive, got C={C}")
    counts = _equal_counts(C, m)
    if n % C != 0:
        raise DivisibilityError(f"sensor count C={C} must divide n={n}")

    rows, width = counts[0], n // C
    D = np.zeros((m, n))
    scale = np.sqrt(C / m)
    for c in range(C):
        full = subgaussian_matrix(rows, n, dist, sensor_seed(seed, c))
        cols = slice(c * width, (c + 1) * width)
        D[c * rows : (c + 1) * rows, cols] = scale * full[:, cols]
    return D


def assemble_block_diagonal(
    U: UnitaryBasis,
    C: int,
    m: int,
    dist: EntryDistribution = EntryDistribution.GAUSSIAN,
    seed: SeedLike = 0,
) -> MeasurementEnsemble:
    """
    Block-diagonal sampling A = sqrt(C/m) blockdiag(Phi_1, ..., Phi_C) U.

    Args:
        U: Sparsity basis
        C: Number of blocks (must divide both m and n)
        m: Total rows
        dist: Entry distribution
        seed: Master seed

    Returns:
        MeasurementEnsemble
    """
    D = block_diagonal_factor(C, m, U.n, dist, seed)
    A = D @ U.matrix
    if not np.any(A.imag):
        A = np.ascontiguousarray(A.real)

    _, basis_ref = _refs(None, U)
    return MeasurementEnsemble(
        matrix=A,
        mode=SamplingMode.BLOCK_DIAGONAL,
        row_counts=(m // C,) * C,
        seed=_seed_value(seed),
        entry_dist=EntryDistribution(dist),
        profile_ref=f"block-diagonal/C={C}",
        basis_ref=basis_ref,
    )


def assemble(
    mode: SamplingMode,
    p: ProfileSet,
    U: UnitaryBasis,
    m: int,
    dist: EntryDistribution = EntryDistribution.GAUSSIAN,
    seed: SeedLike = 0,
    row_counts: Optional[Sequence[int]] = None,
) -> MeasurementEnsemble:
    """
    Dispatch on sampling mode.

    Block-diagonal sampling uses only p.C; distinct-varied needs row_counts.
    """
    mode = SamplingMode(mode)
    if mode is SamplingMode.DISTINCT:
        return assemble_distinct(p, U, m, dist, seed)
    if mode is SamplingMode.IDENTICAL:
        return assemble_identical(p, U, m, dist, seed)
    if mode is SamplingMode.BLOCK_DIAGONAL:
        return assemble_block_diagonal(U, p.C, m, dist, seed)
    if row_counts is None:
        raise ValidationError("distinct-varied sampling needs explicit row counts")
    return assemble_distinct_varied(p, U, row_counts, dist, seed)


def empirical_gram(
    build: Callable[[int], MeasurementEnsemble], draws: int, seed: int = 0
) -> np.ndarray:
    """
    Monte-Carlo estimate of E[A^* A].

    Args:
        build: Maps an integer seed to an ensemble
        draws: Number of independent draws
        seed: Master seed for the per-draw seeds

    Returns:
        n x n average of A^* A
    """
    if draws < 1:
        raise ValidationError(f"need at least one draw, got {draws}")

    seeds = np.random.SeedSequence(seed).generate_state(draws, dtype=np.uint64)
    total: Optional[np.ndarray] = None
    for draw_seed in seeds:
        A = build(int(draw_seed)).matrix
        gram = A.conj().T @ A
        total = gram if total is None else total + gram

    return total / draws
