"""Figures written next to the CSV/JSON reports."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .resources import METRICS, ComparisonRow, closed_form_phi_family  # noqa: E402

STYLE = {
    "figure.dpi": 100,
    "savefig.dpi": 150,
    "font.size": 8,
    "axes.titlesize": 9,
    "axes.labelsize": 8,
    "legend.fontsize": 7,
    "xtick.labelsize": 7,
    "ytick.labelsize": 7,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "axes.grid": True,
    "grid.linewidth": 0.3,
    "svg.hashsalt": "esop-oracle",
}
COLORS = {"CNF": "#c0504d", "e-CNF": "#4f81bd", "grouped": "#9bbb59"}
# keep PNG bytes stable across runs
_METADATA = {"Software": None}


def _save(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, bbox_inches="tight", metadata=_METADATA)
    plt.close(fig)
    return path


def plot_comparison(rows: Sequence[ComparisonRow], path: str | Path) -> Path:
    """One panel per metric (#q, #CX, #T, #D), CNF and e-CNF bars per instance."""
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, 4, figsize=(max(6.0, 1.2 * len(rows) + 4), 2.4))
        x = np.arange(len(rows))
        width = 0.38
        for ax, (key, attr) in zip(axes, METRICS):
            cnf = [getattr(r.cnf, attr) for r in rows]
            ecnf = [getattr(r.ecnf, attr) for r in rows]
            ax.bar(x - width / 2, cnf, width, label="CNF", color=COLORS["CNF"])
            ax.bar(x + width / 2, ecnf, width, label="e-CNF", color=COLORS["e-CNF"])
            ax.set_title(f"#{key}")
            ax.set_xticks(x)
            ax.set_xticklabels([r.name for r in rows], rotation=45, ha="right")
        axes[0].legend(frameon=False)
        fig.tight_layout()
        return _save(fig, path)


def plot_phi_family(
    ms: Sequence[int],
    rows: Sequence[ComparisonRow],
    path: str | Path,
) -> Path:
    """Clifford+T totals against the group count, next to the closed forms."""
    ms = list(ms)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.0, 2.8))
        ax.plot(ms, [r.cnf.total_cliffordT for r in rows], "o-", color=COLORS["CNF"], label="CNF (flat, synthesized)")
        ax.plot(ms, [r.ecnf.total_cliffordT for r in rows], "s-", color=COLORS["e-CNF"], label="e-CNF (synthesized)")
        ax.plot(
            ms,
            [closed_form_phi_family(m, "cnf") for m in ms],
            "--",
            color=COLORS["grouped"],
            label="CNF, grouped closed form",
        )
        ax.plot(ms, [closed_form_phi_family(m, "ecnf") for m in ms], ":", color="k", label="e-CNF closed form")
        ax.set_xlabel("groups m")
        ax.set_ylabel("Clifford+T gates")
        ax.set_xticks(ms)
        ax.legend(frameon=False)
        fig.tight_layout()
        return _save(fig, path)
