"""Figures written next to the tab-separated reports."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .drf import StepSolution  # noqa: E402
from .ratios import RatioReport  # noqa: E402

STYLE = {
    "figure.figsize": (6.0, 3.6),
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.frameon": False,
    "font.size": 9,
}


def _save(fig, path) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_run(steps: Sequence[StepSolution], path, title: str = "") -> None:
    """Water level per step, plus the final dominant shares by arrival order."""
    with plt.rc_context(STYLE):
        fig, (ax1, ax2) = plt.subplots(1, 2)
        ks = [s.step for s in steps]
        ax1.step(ks, [float(s.water_level) for s in steps], where="mid", label="water level")
        ax1.plot(ks, [float(min(s.shares)) for s in steps], ".", ms=3, label="min share")
        ax1.set_xlabel("step k")
        ax1.set_ylabel("dominant share")
        ax1.legend()
        if steps:
            final = steps[-1].shares
            ax2.bar(range(1, len(final) + 1), [float(x) for x in final], width=0.8)
        ax2.set_xlabel("agent (arrival order)")
        ax2.set_ylabel("final share")
        if title:
            fig.suptitle(title)
        _save(fig, path)


def plot_ratios(report: RatioReport, m: int, path, title: str = "") -> None:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ks = [r.k for r in report.per_step]
        if report.cr1 is not None:
            ax.plot(ks, [float(r.ratio1) for r in report.per_step], "o-", ms=3, label="maxsum ratio")
        if report.cr2 is not None:
            ax.plot(ks, [float(r.ratio2) for r in report.per_step], "s-", ms=3, label="maxmin ratio")
        ax.axhline(1 / m, color="k", ls="--", lw=0.8, label=f"1/m = 1/{m}")
        ax.set_ylim(0, 1.05)
        ax.set_xlabel("step k")
        ax.set_ylabel("online / offline")
        ax.legend()
        if title:
            ax.set_title(title)
        _save(fig, path)


def plot_read_scaling(ks: Sequence[int], reads: Sequence[int], m: int, path) -> None:
    """Per-step coordinate reads of the bisection step on log-log axes."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.loglog(ks, reads, "o", ms=3, label="reads")
        ax.loglog(ks, [8 * k * m for k in ks], "--", lw=0.8, label="8 k m")
        ax.set_xlabel("step k")
        ax.set_ylabel("demand-coordinate reads")
        ax.legend()
        _save(fig, path)
