"""
Measurement ensembles for every sampling architecture, plus their file formats.
"""

from .ensembles import (
    EntryDistribution,
    MeasurementEnsemble,
    SamplingMode,
    assemble,
    assemble_block_diagonal,
    assemble_distinct,
    assemble_distinct_varied,
    assemble_identical,
    block_diagonal_factor,
    empirical_gram,
    sensor_seed,
    subgaussian_matrix,
)
from .storage import load_ensemble, read_vector_csv, save_ensemble, write_vector_csv

__all__ = [
    "SamplingMode",
    "EntryDistribution",
    "MeasurementEnsemble",
    "sensor_seed",
    "subgaussian_matrix",
    "assemble_distinct",
    "assemble_distinct_varied",
    "assemble_identical",
    "assemble_block_diagonal",
    "block_diagonal_factor",
    "assemble",
    "empirical_gram",
    "save_ensemble",
    "load_ensemble",
    "write_vector_csv",
    "read_vector_csv",
]
