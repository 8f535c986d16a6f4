"""Figures for the bounds report (rendered off-screen to files)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bounds import hkt_bound, known_exact, new_bound  # noqa: E402
from .planner import best_known  # noqa: E402


def plot_bounds(lo: int, hi: int, path) -> None:
    """Lower bounds, exact values and best catalog upper bounds for lo <= m <= hi."""
    ms = list(range(max(lo, 2), hi + 1))
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.step(ms, [float(hkt_bound(m)) for m in ms], where="mid", label="HKT lower bound", color="tab:gray")
    ax.plot(ms, [float(new_bound(m)) for m in ms], ".-", ms=3, label="F(m) lower bound", color="tab:blue")
    ax.step(ms, [float(best_known(m).limit) for m in ms], where="mid", label="best catalog design", color="tab:orange")
    exact = [(m, known_exact(m)) for m in ms]
    exact = [(m, v) for m, v in exact if v is not None]
    if exact:
        ax.plot([m for m, _ in exact], [float(v) for _, v in exact], "k*", ms=7, label="known L(m)")
    ax.set_xlabel("machines m")
    ax.set_ylabel("fraction of data per machine")
    ax.set_title(f"Data limit bounds, m = {ms[0]}..{ms[-1]}")
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
