"""Report figures.

Renders the experiment report to PNG files next to the delimited
output. Import is deferred to call time by the CLI so the core library
never pays for matplotlib; this module forces the non-interactive Agg
backend because it only ever draws to files.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .experiment import ExperimentReport

__all__ = ["render_report_figures"]

_BOUND_SERIES = (
    ("first_moment_k", "first moment"),
    ("hypergeometric_k", "hypergeometric"),
    ("homogeneous_certified_k", "homogeneous (certified)"),
    ("bonferroni_k", "bonferroni"),
    ("decomposed_sound_total", "decomposed (sound)"),
    ("greedy_size", "greedy"),
    ("exact_size", "exact"),
)

_RATIO_SERIES = (
    ("greedy_over_threshold", "greedy / threshold"),
    ("first_moment_over_threshold", "first moment / threshold"),
)


def _series(report: ExperimentReport, column: str, x_column: str):
    xs, ys = [], []
    for rec in report.records:
        x, y = rec[x_column], rec[column]
        if x is not None and y is not None:
            xs.append(x)
            ys.append(y)
    return xs, ys


def render_report_figures(
    report: ExperimentReport, directory: str | Path, stem: str = "report"
) -> list[Path]:
    """Write the bound-comparison and threshold-ratio figures.

    Returns the paths actually written; a figure with no plottable data
    is skipped rather than emitted empty.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    plotted = False
    for column, label in _BOUND_SERIES:
        xs, ys = _series(report, column, "index")
        if xs:
            ax.plot(xs, ys, marker="o", markersize=3, linewidth=1, label=label)
            plotted = True
    if plotted:
        ax.set_xlabel("instance")
        ax.set_ylabel("cover size")
        ax.set_title("certified bounds vs constructed covers")
        ax.legend(fontsize=8)
        path = directory / f"{stem}_bounds.png"
        fig.savefig(path, dpi=150, bbox_inches="tight")
        written.append(path)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    plotted = False
    for column, label in _RATIO_SERIES:
        xs, ys = _series(report, column, "m")
        if xs:
            ax.plot(xs, ys, linestyle="", marker="o", markersize=4, alpha=0.7, label=label)
            plotted = True
    if plotted:
        ax.axhline(1.0, color="gray", linewidth=0.8, linestyle="--")
        ax.set_xlabel("rows m")
        ax.set_ylabel("size / threshold")
        ax.set_title("cover sizes against log m / |log(1-delta)|")
        ax.legend(fontsize=8)
        path = directory / f"{stem}_ratios.png"
        fig.savefig(path, dpi=150, bbox_inches="tight")
        written.append(path)
    plt.close(fig)

    return written
