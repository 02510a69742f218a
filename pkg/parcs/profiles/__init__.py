"""
Sensor profile families and joint near-isometry constants.
"""

from .families import (
    FAMILIES,
    as_circulant,
    banded_cosine,
    block_shift_witness,
    build_profiles,
    circulant_from_eigs,
    dense_profiles,
    globally_spread,
    identity_profiles,
    perfectly_partitioned,
    rademacher_diagonal,
)
from .profile_set import (
    ProfileSet,
    ProfileStructure,
    is_normal,
    joint_near_isometry,
    make_profile_set,
    overlap_degree,
    support_mask,
)

__all__ = [
    "ProfileSet",
    "ProfileStructure",
    "make_profile_set",
    "joint_near_isometry",
    "overlap_degree",
    "support_mask",
    "is_normal",
    "FAMILIES",
    "perfectly_partitioned",
    "banded_cosine",
    "globally_spread",
    "rademacher_diagonal",
    "identity_profiles",
    "circulant_from_eigs",
    "dense_profiles",
    "block_shift_witness",
    "as_circulant",
    "build_profiles",
]
