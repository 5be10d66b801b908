"""Matplotlib rendering of rate regions to image files (report path)."""
from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .geometry import RateRegion

_STYLES = ("-", "--", "-.", ":", (0, (3, 1, 1, 1)))


def render_regions(
    entries: Sequence[tuple[str, RateRegion]],
    path: str,
    title: str = "",
    dpi: int = 150,
) -> str:
    """Draw the closed boundary of each labeled region and save a PNG.

    Returns the path written.  Regions are drawn as outlines in the plotting
    order with cycling line styles, so nested regions stay readable.
    """
    fig, ax = plt.subplots(figsize=(6.0, 5.0))
    for i, (label, region) in enumerate(entries):
        if region.is_empty:
            continue
        xs = list(region.vertices[:, 0]) + [region.vertices[0, 0]]
        ys = list(region.vertices[:, 1]) + [region.vertices[0, 1]]
        ax.plot(xs, ys, linestyle=_STYLES[i % len(_STYLES)], linewidth=1.6, label=label)
    ax.set_xlabel(r"$R_1$ (bits / channel use)")
    ax.set_ylabel(r"$R_2$ (bits / channel use)")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best", fontsize=9)
    ax.set_xlim(left=0.0)
    ax.set_ylim(bottom=0.0)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
