"""
Ensemble container and vector files.

Container layout: the 8-byte magic ``PARCSENS``, a little-endian uint32 header
length, a UTF-8 JSON header, then the matrix as row-major little-endian float64
(complex matrices as interleaved real/imaginary pairs).
"""

import json
import struct
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np
import pandas as pd

from ..exceptions import ContainerFormatError
from ..monitoring.logger import get_logger
from .ensembles import EntryDistribution, MeasurementEnsemble, SamplingMode

logger = get_logger(__name__)

MAGIC = b"PARCSENS"
FORMAT_VERSION = 1
_LENGTH = struct.Struct("<I")

PathLike = Union[str, Path]


def _header(ens: MeasurementEnsemble) -> Dict[str, Any]:
    return {
        "format_version": FORMAT_VERSION,
        "mode": ens.mode.value,
        "rows": ens.m,
        "cols": ens.n,
        "row_counts": list(ens.row_counts),
        "seed": ens.seed,
        "entry_dist": ens.entry_dist.value,
        "profile_ref": ens.profile_ref,
        "basis_ref": ens.basis_ref,
        "dtype": "complex128" if np.iscomplexobj(ens.matrix) else "float64",
    }


def save_ensemble(ens: MeasurementEnsemble, path: PathLike) -> Path:
    """
    Write an ensemble to a container file.

    Args:
        ens: Ensemble to store
        path: Destination file

    Returns:
        Path written
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    header = json.dumps(_header(ens), sort_keys=True).encode("utf-8")
    if np.iscomplexobj(ens.matrix):
        payload = np.ascontiguousarray(ens.matrix, dtype="<c16").view("<f8")
    else:
        payload = np.ascontiguousarray(ens.matrix, dtype="<f8")

    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(_LENGTH.pack(len(header)))
        fh.write(header)
        fh.write(payload.tobytes(order="C"))

    logger.debug(f"Saved {ens.m}x{ens.n} {ens.mode.value} ensemble to {path}")
    return path


def load_ensemble(path: PathLike) -> MeasurementEnsemble:
    """
    Read an ensemble container.

    Args:
        path: Container file

    Returns:
        MeasurementEnsemble
    """
    raw = Path(path).read_bytes()
    prefix = len(MAGIC) + _LENGTH.size

    if len(raw) < prefix or raw[: len(MAGIC)] != MAGIC:
        raise ContainerFormatError(f"{path} is not an ensemble container (bad magic)")

    (header_len,) = _LENGTH.unpack_from(raw, len(MAGIC))
    if len(raw) < prefix + header_len:
        raise ContainerFormatError(f"{path}: truncated header")

    try:
        header = json.loads(raw[prefix : prefix + header_len].decode("utf-8"))
        rows, cols = int(header["rows"]), int(header["cols"])
        is_complex = header["dtype"] == "complex128"
        mode = SamplingMode(header["mode"])
        dist = EntryDistribution(header["entry_dist"])
    except (KeyError, ValueError, UnicodeDecodeError) as e:
        raise ContainerFormatError(f"{path}: invalid header ({e})") from e

    values = np.frombuffer(raw[prefix + header_len :], dtype="<f8")
    expected = rows * cols * (2 if is_complex else 1)
    if values.size != expected:
        raise ContainerFormatError(f"{path}: payload has {values.size} values, expected {expected}")

    matrix = values.view("<c16") if is_complex else values
    matrix = np.array(matrix.reshape(rows, cols), dtype=np.complex128 if is_complex else np.float64)

    return MeasurementEnsemble(
        matrix=matrix,
        mode=mode,
        row_counts=tuple(int(v) for v in header.get("row_counts", [rows])),
        seed=header.get("seed"),
        entry_dist=dist,
        profile_ref=header.get("profile_ref", ""),
        basis_ref=header.get("basis_ref", ""),
    )


def write_vector_csv(vector: np.ndarray, path: PathLike) -> Path:
    """Write a complex vector as CSV with columns index, real, imag."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    vector = np.asarray(vector).ravel()
    df = pd.DataFrame(
        {"index": np.arange(vector.size), "real": vector.real, "imag": np.imag(vector)}
    )
    df.to_csv(path, index=False, float_format="%.17g", encoding="utf-8")
    return path


def read_vector_csv(path: PathLike) -> np.ndarray:
    """Read a vector written by ``write_vector_csv`` (an imag column is optional)."""
    df = pd.read_csv(path)
    if "real" not in df.columns:
        raise ContainerFormatError(f"{path}: vector CSV needs a 'real' column")
    if "index" in df.columns:
        df = df.sort_values("index")
    real = df["real"].to_numpy(dtype=np.float64)
    if "imag" in df.columns:
        return real + 1j * df["imag"].to_numpy(dtype=np.float64)
    return real
