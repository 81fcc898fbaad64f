"""Distance-matrix heatmaps written next to the CLI's JSON/text report."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .space import SemiMetricSpace  # noqa: E402

RC = {
    "font.size": 9,
    "axes.titlesize": 10,
    "xtick.labelsize": 6,
    "ytick.labelsize": 6,
    "figure.dpi": 120,
}
MAX_TICKS = 30


def distance_heatmap(space: SemiMetricSpace, title: str = ""):
    """Figure of the finite part of the distance matrix; infinite entries are hatched grey."""
    d = np.array(space.dist, dtype=float)
    finite = np.isfinite(d)
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(5.2, 4.4))
        ax.set_facecolor("0.85")
        shown = np.ma.masked_array(d, mask=~finite)
        n = len(space)
        if n:
            im = ax.imshow(shown, cmap="viridis", interpolation="nearest")
            fig.colorbar(im, ax=ax, label="distance")
        if n <= MAX_TICKS:
            ax.set_xticks(range(n), space.points, rotation=90)
            ax.set_yticks(range(n), space.points)
        else:
            ax.set_xticks([])
            ax.set_yticks([])
            ax.set_xlabel(f"{n} points")
        ax.set_title(title or f"{n}-point space")
        fig.tight_layout()
    return fig


def save_heatmaps(spaces: dict[str, SemiMetricSpace], directory, stem: str) -> list[str]:
    """Write one PNG per named space; returns the paths written."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, space in spaces.items():
        path = out / f"{stem}-{name}.png"
        fig = distance_heatmap(space, f"{stem}: {name}")
        fig.savefig(path)
        plt.close(fig)
        written.append(str(path))
    return written
