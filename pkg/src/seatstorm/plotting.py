"""Figures for the experiment outputs (matplotlib, no display needed)."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["plot_sweep", "plot_merge", "plot_effectiveness"]

# fixed metadata keeps repeated renders byte-identical
_META = {"Software": None}


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, metadata=_META)
    plt.close(fig)
    return path


def plot_sweep(result, path, title: str = "") -> Path:
    xs = [float(t) for t, _ in result.points]
    ys = [v for _, v in result.points]
    fig, ax = plt.subplots(figsize=(6, 3.2))
    ax.plot(xs, ys, drawstyle="steps-post", color="tab:blue")
    ax.set_xlabel("threshold (% of ballots)")
    verb = "gained" if result.direction == "constructive" else "lost"
    ax.set_ylabel(f"seats {verb}")
    ax.set_xlim(min(xs, default=0), max(xs, default=1))
    ax.set_ylim(bottom=0)
    ax.set_title(title or f"budget {float(result.budget_fraction) * 100:g}% of ballots ({result.budget} votes)")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    return _save(fig, path)


def plot_merge(result, path, title: str = "") -> Path:
    rows = sorted(result.rows, key=lambda r: -r.districts)
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot([r.districts for r in rows], [float(r.ratio) for r in rows], marker="o", color="tab:red")
    ax.invert_xaxis()
    ax.set_xlabel("districts")
    ax.set_ylabel("budget per seat / original")
    ax.set_title(title or f"{result.direction}, seat level {result.level}")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    return _save(fig, path)


def plot_effectiveness(report, path, selections=("average", "strongest", "weakest")) -> Path:
    countries = list(dict.fromkeys(c for c, _, _ in report.cells))
    kinds = list(dict.fromkeys(k for _, k, _ in report.cells))
    fig, axes = plt.subplots(1, len(countries), figsize=(4 * len(countries), 3.2), squeeze=False)
    width = 0.8 / len(kinds)
    for ax, country in zip(axes[0], countries):
        for j, kind in enumerate(kinds):
            vals = [float(report.value(country, kind, s) or 0) for s in selections]
            ax.bar([i + j * width for i in range(len(selections))], vals, width, label=kind)
        ax.set_xticks([i + 0.4 - width / 2 for i in range(len(selections))])
        ax.set_xticklabels(selections)
        ax.set_title(country)
        ax.axhline(1, color="black", lw=0.5)
    axes[0][0].set_ylabel("budget / optimal")
    axes[0][-1].legend(fontsize="small")
    fig.tight_layout()
    return _save(fig, path)
