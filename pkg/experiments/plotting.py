"""
SVG figures rendered from archived CSV files only.
"""

from pathlib import Path
from typing import List, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

from parcs.monitoring.logger import get_logger  # noqa: E402

logger = get_logger(__name__)

PathLike = Union[str, Path]

# Fixed id salt and no Date field, so the same CSV always renders the same bytes
SVG_RC = {"svg.hashsalt": "parcs"}
SVG_METADATA = {"Date": None}

CONSTANT_LABELS = {
    "gamma_distinct_sq": r"$\Gamma^2_{distinct}$",
    "gamma_identical_sq": r"$\Gamma^2_{identical}$",
    "xi_distinct_sq": r"$\Xi^2_{distinct}$",
    "xi_identical_sq": r"$\Xi^2_{identical}$",
}


def plot_phase_grid_svg(grid_csv: PathLike, out_dir: PathLike) -> List[Path]:
    """
    One heatmap per sensor count, with the transition curve overlaid.

    Args:
        grid_csv: phase_grid.csv
        out_dir: Directory for phase_grid_C<C>.svg

    Returns:
        Paths written
    """
    df = pd.read_csv(grid_csv)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    written = []
    for C, cells in df.groupby("C", sort=True):
        pivot = cells.pivot(index="cell_y", columns="cell_x", values="success_fraction")
        xs = pivot.columns.to_numpy()
        ys = pivot.index.to_numpy()

        fig, ax = plt.subplots(figsize=(5, 4))
        mesh = ax.imshow(
            pivot.to_numpy(),
            origin="lower",
            aspect="auto",
            extent=(0.0, float(xs.max()), 0.0, float(ys.max())),
            vmin=0.0,
            vmax=1.0,
            cmap="gray",
        )

        with np.errstate(invalid="ignore"):
            reached = pivot.to_numpy() >= 0.5
        curve = [ys[np.flatnonzero(col)[-1]] if col.any() else np.nan for col in reached.T]
        ax.plot(xs, curve, color="tab:red", linewidth=1.5)

        ax.set_xlabel("m / (C N)")
        ax.set_ylabel("s / N")
        ax.set_title(f"C = {C}")
        fig.colorbar(mesh, ax=ax, label="success fraction")
        fig.tight_layout()

        path = out_dir / f"phase_grid_C{C}.svg"
        with plt.rc_context(SVG_RC):
            fig.savefig(path, format="svg", metadata=SVG_METADATA)
        plt.close(fig)
        written.append(path)

    logger.info(f"Wrote {len(written)} phase-grid figure(s) to {out_dir}")
    return written


def plot_constants_svg(constants_csv: PathLike, out_path: PathLike) -> Path:
    """
    Squared constants against C on log-log axes.

    Args:
        constants_csv: constants.csv
        out_path: SVG destination

    Returns:
        Path written
    """
    df = pd.read_csv(constants_csv).sort_values("C")
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)

    fig, ax = plt.subplots(figsize=(5, 4))
    for column, label in CONSTANT_LABELS.items():
        if column in df.columns:
            ax.loglog(df["C"], df[column], marker="o", label=label)

    ax.set_xlabel("C")
    ax.set_ylabel("value")
    title = ", ".join(str(v) for v in df[["family", "basis"]].iloc[0]) if len(df) else ""
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    with plt.rc_context(SVG_RC):
        fig.savefig(out_path, format="svg", metadata=SVG_METADATA)
    plt.close(fig)
    return out_path
