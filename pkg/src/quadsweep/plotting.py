"""Report figures rendered alongside the delimited experiment output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render_report_figure(report: dict, path) -> None:
    kind = report["experiment"]
    if kind == "timing":
        _timing_figure(report, path)
    elif kind == "separability":
        _separability_figure(report, path)
    elif kind == "optimality":
        _optimality_figure(report, path)
    else:
        raise ValueError(f"no figure defined for experiment {kind!r}")


def _timing_figure(report: dict, path) -> None:
    cells = report["cells"]
    ns = np.array([c["n"] for c in cells], dtype=float)
    means = np.array([c["mean_ms"] for c in cells])
    medians = np.array([c["median_ms"] for c in cells])

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog(ns, means, "o-", label="mean")
    ax.loglog(ns, medians, "s--", label="median", alpha=0.7)
    if len(ns) >= 2:
        slope = np.polyfit(np.log(ns), np.log(means), 1)[0]
        ax.set_title(f"Sweep trial time (log-log slope {slope:.2f})")
    ax.set_xlabel("n")
    ax.set_ylabel("trial time [ms]")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _separability_figure(report: dict, path) -> None:
    cells = report["cells"]
    objectives = sorted({c["objective"] for c in cells})
    lifts = sorted({c["lift"] for c in cells})
    width = 0.8 / len(lifts)
    xs = np.arange(len(objectives))

    fig, ax = plt.subplots(figsize=(7, 4))
    for i, lift in enumerate(lifts):
        rates = [next(c["success_rate"] for c in cells
                      if c["objective"] == o and c["lift"] == lift)
                 for o in objectives]
        ax.bar(xs + i * width, rates, width, label=lift)
    ax.set_xticks(xs + width * (len(lifts) - 1) / 2)
    ax.set_xticklabels(objectives)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("separability rate")
    ax.set_title("Hull separability of the optimal subset after lifting")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _optimality_figure(report: dict, path) -> None:
    cells = report["cells"]
    methods = list(dict.fromkeys(c["method"] for c in cells))
    ns = sorted({c["n"] for c in cells})

    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    for method in methods:
        pts = [(c["n"], c["success_rate"]) for c in cells
               if c["method"] == method and c["success_rate"] is not None]
        if pts:
            axes[0].plot(*zip(*pts), "o-", label=method)
        pts = [(c["n"], c["mean_score_ratio"]) for c in cells
               if c["method"] == method and c["mean_score_ratio"] is not None]
        if pts:
            axes[1].plot(*zip(*pts), "o-", label=method)
    axes[0].set_xlabel("n")
    axes[0].set_ylabel("success rate")
    axes[0].set_xticks(ns)
    axes[0].set_ylim(-0.05, 1.05)
    axes[1].set_xlabel("n")
    axes[1].set_ylabel("mean score ratio")
    axes[1].set_xticks(ns)
    for ax in axes:
        ax.grid(alpha=0.3)
        ax.legend(fontsize=8)
    fig.suptitle("Subset selection vs. brute-force ground truth")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
