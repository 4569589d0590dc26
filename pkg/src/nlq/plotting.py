"""Figures for the demo report."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .demo import DemoReport  # noqa: E402
from .pipeline import STEPS  # noqa: E402

KIND_COLORS = {
    "Keyword": "#4c72b0",
    "ShortObjective": "#55a868",
    "SimpleObjective": "#c44e52",
    "MultiCondition": "#8172b2",
}


def _labels(report: DemoReport, width: int = 48) -> list[str]:
    out = []
    for r in report.results:
        q = r.golden.query
        out.append(q if len(q) <= width else q[: width - 1] + "…")
    return out


def plot_row_counts(report: DemoReport, path: str | Path) -> Path:
    labels = _labels(report)
    n = len(labels)
    fig, ax = plt.subplots(figsize=(9, 0.32 * n + 1.4))
    ys = range(n)
    actual = [r.rows or 0 for r in report.results]
    expected = [r.golden.rows for r in report.results]
    colors = [KIND_COLORS.get(r.golden.kind, "grey") for r in report.results]
    ax.barh(ys, actual, color=colors, height=0.6)
    ax.scatter(expected, ys, marker="|", s=180, color="black", zorder=3, label="expected")
    for y, r in zip(ys, report.results):
        if not r.ok:
            ax.text(max(actual[y], expected[y]) + 0.2, y, "FAIL", va="center", color="red", fontsize=8)
    ax.set_yticks(list(ys))
    ax.set_yticklabels(labels, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("rows returned")
    handles = [plt.Rectangle((0, 0), 1, 1, color=c) for c in KIND_COLORS.values()]
    ax.legend(handles + [ax.collections[0]], list(KIND_COLORS) + ["expected"],
              fontsize=7, loc="lower right", frameon=False)
    ax.grid(True, axis="x", alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_step_timings(report: DemoReport, path: str | Path) -> Path:
    labels = _labels(report)
    n = len(labels)
    fig, ax = plt.subplots(figsize=(9, 0.32 * n + 1.4))
    left = [0.0] * n
    cmap = plt.get_cmap("viridis", len(STEPS))
    for k, step in enumerate(STEPS):
        widths = [dict(r.timings).get(step, 0.0) * 1000 for r in report.results]
        ax.barh(range(n), widths, left=left, height=0.6, color=cmap(k), label=step)
        left = [a + b for a, b in zip(left, widths)]
    ax.set_yticks(list(range(n)))
    ax.set_yticklabels(labels, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("milliseconds")
    ax.legend(fontsize=7, loc="lower right", frameon=False)
    ax.grid(True, axis="x", alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
