import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from parcs.exceptions import (
    CountTooSmallError,
    DivisibilityError,
    LengthMismatchError,
    SingularGramError,
    StructureError,
    ValidationError,
)
from parcs.profiles import (
    FAMILIES,
    ProfileStructure,
    as_circulant,
    banded_cosine,
    block_shift_witness,
    build_profiles,
    circulant_from_eigs,
    dense_profiles,
    globally_spread,
    identity_profiles,
    is_normal,
    joint_near_isometry,
    make_profile_set,
    overlap_degree,
    perfectly_partitioned,
    rademacher_diagonal,
    support_mask,
)

divisor_pairs = st.sampled_from([(1, 8), (2, 8), (4, 16), (8, 32), (3, 12)])


@pytest.mark.parametrize("family", FAMILIES)
def test_every_family_is_a_joint_isometry(family):
    p = build_profiles(family, 4, 16, seed=3)
    alpha, beta = joint_near_isometry(p)
    assert alpha == pytest.approx(1.0, abs=1e-12)
    assert beta == pytest.approx(1.0, abs=1e-12)
    assert p.condition == pytest.approx(1.0)


@given(divisor_pairs)
def test_partitioned_blocks_do_not_overlap(pair):
    C, n = pair
    p = perfectly_partitioned(C, n)
    mask = support_mask(p)
    assert mask.sum(axis=0).tolist() == [1] * n
    assert overlap_degree(p) == 1


def test_partitioned_magnitude_is_sqrt_c():
    p = perfectly_partitioned(4, 8)
    assert np.abs(p.data).max() == pytest.approx(2.0)


def test_partitioned_requires_divisibility():
    with pytest.raises(DivisibilityError):
        perfectly_partitioned(3, 8)


@pytest.mark.parametrize("C, n, q", [(2, 16, 2), (4, 32, 3), (8, 64, 3)])
def test_banded_overlap_degree(C, n, q):
    assert overlap_degree(banded_cosine(C, n)) == q


def test_banded_needs_two_sensors():
    with pytest.raises(CountTooSmallError):
        banded_cosine(1, 8)


def test_banded_needs_divisibility():
    with pytest.raises(DivisibilityError):
        banded_cosine(3, 16)


def test_globally_spread_is_unimodular_and_seeded():
    a = globally_spread(3, 10, seed=11)
    b = globally_spread(3, 10, seed=11)
    np.testing.assert_allclose(np.abs(a.data), 1.0)
    np.testing.assert_array_equal(a.data, b.data)
    assert overlap_degree(a) == 3


@pytest.mark.parametrize("seed", range(10))
def test_globally_spread_constants_are_one_to_rounding(seed):
    p = globally_spread(4, 256, seed=seed)
    ulps = 8 * np.finfo(float).eps
    assert abs(p.alpha - 1.0) <= ulps
    assert abs(p.beta - 1.0) <= ulps
    assert abs(float(np.abs(p.data).max()) - 1.0) <= ulps


def test_rademacher_entries_are_signs():
    p = rademacher_diagonal(5, 12, seed=2)
    assert set(np.unique(p.data.real).tolist()) <= {-1.0, 1.0}
    assert not np.any(p.data.imag)


def test_identity_profiles_matrices():
    H = identity_profiles(2, 3).matrices()
    np.testing.assert_array_equal(H, np.stack([np.eye(3), np.eye(3)]))


def test_profile_data_is_read_only():
    p = perfectly_partitioned(2, 4)
    with pytest.raises(ValueError):
        p.data[0, 0] = 5.0


def test_zero_column_is_singular():
    h = np.ones((2, 4))
    h[:, 1] = 0.0
    with pytest.raises(SingularGramError):
        make_profile_set(ProfileStructure.DIAGONAL, h)


def test_dense_profiles_must_be_square():
    with pytest.raises(LengthMismatchError):
        make_profile_set(ProfileStructure.DENSE, np.ones((2, 3, 4)))


def test_support_mask_rejects_dense():
    p = dense_profiles([np.eye(3)])
    with pytest.raises(StructureError):
        support_mask(p)


@pytest.mark.parametrize("structure", ["diagonal", "circulant", "dense"])
def test_apply_matches_matrices(structure, rng):
    h = rng.standard_normal((3, 6)) + 1j * rng.standard_normal((3, 6)) + 2.0
    if structure == "dense":
        p = dense_profiles([np.diag(row) + 0.1 * np.eye(6, k=1) for row in h])
    else:
        p = make_profile_set(structure, h)
    X = rng.standard_normal((6, 2))
    H = p.matrices()
    for c in range(3):
        np.testing.assert_allclose(p.apply(c, X), H[c] @ X, atol=1e-12)


def test_circulant_matrices_are_circulant(rng):
    lam = rng.standard_normal(8) + 1j * rng.standard_normal(8) + 3.0
    H = circulant_from_eigs([lam]).matrices()[0]
    for k in range(1, 8):
        np.testing.assert_allclose(np.roll(np.roll(H, k, axis=0), k, axis=1), H, atol=1e-12)
    assert is_normal(dense_profiles([H]))


def test_circulant_eigs_must_share_length():
    with pytest.raises(LengthMismatchError):
        circulant_from_eigs([np.ones(4), np.ones(5)])


def test_as_circulant_keeps_constants():
    p = perfectly_partitioned(2, 8)
    q = as_circulant(p)
    assert q.structure is ProfileStructure.CIRCULANT
    assert (q.alpha, q.beta) == (p.alpha, p.beta)
    with pytest.raises(StructureError):
        as_circulant(dense_profiles([np.eye(2)]))


def test_block_shift_witness_gram_is_identity():
    p = block_shift_witness(3, 2)
    np.testing.assert_allclose(p.gram_average(), np.eye(6), atol=1e-12)
    assert not is_normal(p)


def test_unknown_family():
    with pytest.raises(ValidationError):
        build_profiles("triangular", 2, 8)
