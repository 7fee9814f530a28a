"""Figures written next to the TSV/JSON reports.

All figures go through :func:`pretty_plot` and :func:`save_figure` so the
look is uniform and the PNG bytes are reproducible (no timestamp or
software metadata).
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def pretty_plot(width=6.0, height=None):
    """Figure and axes with readable defaults.

    Args:
        width: figure width in inches.
        height: figure height in inches, defaults to width times the golden ratio.
    """
    golden_ratio = (math.sqrt(5) - 1.0) / 2.0
    if not height:
        height = width * golden_ratio
    fig, ax = plt.subplots(figsize=(width, height), facecolor="w")
    ax.tick_params(labelsize=9)
    return fig, ax


def save_figure(fig, path) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=110, metadata={"Software": None})
    plt.close(fig)


def plot_ranks(ranks, path, title=""):
    fig, ax = pretty_plot()
    levels = np.arange(len(ranks))
    ax.bar(levels, ranks, color="#4477aa")
    if max(ranks) > 50:
        ax.set_yscale("log")
    ax.set_xlabel("level n")
    ax.set_ylabel("rank of P_n")
    ax.set_xticks(levels)
    ax.set_title(title, fontsize=10)
    save_figure(fig, path)


def _heatmap(ax, table, xlabel, ylabel):
    rows = sorted({k[0] for k in table})
    cols = sorted({k[1] for k in table})
    data = np.zeros((len(rows), len(cols)))
    for (r, c), v in table.items():
        data[rows.index(r), cols.index(c)] = v
    im = ax.imshow(data, origin="lower", aspect="auto", cmap="viridis")
    ax.set_xticks(range(len(cols)))
    ax.set_xticklabels(cols)
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels(rows)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    for i in range(len(rows)):
        for j in range(len(cols)):
            if data[i, j]:
                ax.text(j, i, f"{int(data[i, j])}", ha="center", va="center", fontsize=7, color="w")
    return im


def plot_homology(report, path, title=""):
    """Heatmap of H_n(t); nonzero cells above row 0 are conjecture violations."""
    fig, ax = pretty_plot(7)
    im = _heatmap(ax, report.table, "internal degree t", "position n")
    fig.colorbar(im, ax=ax, label="dim H_n(t)")
    ax.set_title(title or f"homology ({report.field}): {report.verdict}", fontsize=10)
    save_figure(fig, path)


def plot_ext(evidence, path, title=""):
    table = {
        (i, u + i): d for i, row in evidence.dims.items() for u, d in row.items()
    }
    fig, ax = pretty_plot(7)
    im = _heatmap(ax, table, "degree offset u + i", "cochain position i")
    fig.colorbar(im, ax=ax, label="dim H^i(u)")
    for p in evidence.vv_positions:
        ax.axhline(p - min(evidence.dims), color="r", lw=0.6, ls=":")
    ax.set_title(title or f"cohomology of the dual complex ({evidence.field})", fontsize=10)
    save_figure(fig, path)


def plot_hilbert(dims, path, title=""):
    fig, ax = pretty_plot()
    ax.plot(range(len(dims)), dims, "o-", color="#228833")
    ax.set_xlabel("degree d")
    ax.set_ylabel("dim R_d")
    ax.set_title(title, fontsize=10)
    save_figure(fig, path)
