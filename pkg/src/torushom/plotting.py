"""Support plots of invariants in the (Q, T) exponent plane."""
from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

from .ratfield import RatFunc  # noqa: E402


def support(value: RatFunc) -> dict:
    """``(q_exp, t_exp) -> {a_exp: coeff}`` for the numerator."""
    grid: dict = defaultdict(dict)
    for (ea, eq, et), c in value.num.items():
        grid[(eq, et)][ea] = c
    return dict(grid)


def plot_support(value: RatFunc, title: str, path) -> Path:
    """Scatter the numerator terms; marker area tracks |coeff|, colour the A-degree."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    xs, ys, sizes, colours = [], [], [], []
    a_degs = [m[0] for m, _ in value.num.items()] or [0]
    a_mid, a_span = (max(a_degs) + min(a_degs)) / 2, max(1, max(a_degs) - min(a_degs))
    for (ea, eq, et), c in value.num.items():
        # terms sharing a (Q, T) cell are fanned out horizontally by A-degree
        xs.append(eq + 0.3 * (ea - a_mid) / a_span)
        ys.append(et)
        sizes.append(30 * abs(c))
        colours.append(ea)
    fig, ax = plt.subplots(figsize=(4.5, 4))
    sc = ax.scatter(xs, ys, s=sizes, c=colours, cmap="viridis", edgecolors="k", linewidths=0.4)
    if colours:
        fig.colorbar(sc, ax=ax, label="A degree")
    ax.set_xlabel("Q degree")
    ax.set_ylabel("T degree")
    ax.set_title(title, fontsize=9)
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax.yaxis.set_major_locator(MaxNLocator(integer=True))
    ax.grid(True, alpha=0.3)
    ax.set_aspect("equal", adjustable="datalim")
    fig.tight_layout()
    fig.savefig(path, dpi=110, metadata={"Software": None})
    plt.close(fig)
    return path
