"""Figure rendering for the scan report path.

Three PNGs summarizing a sweep, written next to the delimited output:
spectrum size against group order, a histogram of spectrum sizes, and
the minimum degree d(G) against order with the 5/8 bound drawn in.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .report import Report  # noqa: E402

FIGURE_NAMES = ("spectrum_size_vs_order.png",
                "spectrum_size_hist.png",
                "min_degree_vs_order.png")


def render_scan_figures(reports: list[Report], out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    orders = [r.order for r in reports]
    sizes = [r.spectrum_size for r in reports]
    min_degrees = [float(Fraction(r.spectrum[-1])) for r in reports]
    written = []

    fig, ax = plt.subplots(figsize=(7, 5))
    ax.scatter(orders, sizes, s=14, alpha=0.6, edgecolors="none")
    ax.set_xlabel("group order")
    ax.set_ylabel("number of relative commutativity degrees")
    ax.set_title("Spectrum size by group order")
    ax.grid(True, alpha=0.3)
    path = out / FIGURE_NAMES[0]
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(7, 5))
    counts: dict[int, int] = {}
    for s in sizes:
        counts[s] = counts.get(s, 0) + 1
    keys = sorted(counts)
    ax.bar(keys, [counts[k] for k in keys], width=0.8)
    ax.set_xlabel("|D(G)|")
    ax.set_ylabel("catalog groups")
    ax.set_title("Distribution of spectrum sizes")
    path = out / FIGURE_NAMES[1]
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(7, 5))
    ax.scatter(orders, min_degrees, s=14, alpha=0.6, edgecolors="none")
    ax.axhline(5 / 8, color="crimson", linewidth=1,
               label="5/8 bound for nonabelian groups")
    ax.set_xlabel("group order")
    ax.set_ylabel("d(G)")
    ax.set_title("Commutativity degree by group order")
    ax.legend(loc="upper right")
    ax.grid(True, alpha=0.3)
    path = out / FIGURE_NAMES[2]
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)
    return written
