"""Render sweep results to figure files alongside their CSV output.

The CSV table is the canonical artifact; these plots are quick-look
renderings of the same rows.  The module draws through an explicit Agg
figure so importing it never touches a display backend.
"""

from __future__ import annotations

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .errors import InvalidParameterError
from .sweep import SweepResult

__all__ = ["render_sweep"]


def _good_rows(result: SweepResult):
    return [row for row in result.rows if not row["error"]]


def _curves(rows):
    order = []
    for row in rows:
        if row["curve"] not in order:
            order.append(row["curve"])
    return order


def _maybe_log(ax, xs, ys):
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if np.all(xs > 0) and xs.size > 1 and xs.max() / xs.min() > 30:
        ax.set_xscale("log")
    if np.all(ys > 0) and ys.size > 1 and ys.max() / max(ys.min(), 1e-300) > 100:
        ax.set_yscale("log")


def render_sweep(result: SweepResult, path, title: str = "") -> None:
    """Render one result table to an image file (format from the extension)."""
    rows = _good_rows(result)
    if not rows:
        raise InvalidParameterError("nothing to plot: every row carries an error")
    axis = result.columns[1]
    density = any(c.startswith("n_") for c in result.columns)

    fig = Figure(figsize=(6.4, 4.4))
    FigureCanvasAgg(fig)
    ax = fig.add_subplot(111)

    if density:
        n_cols = [c for c in result.columns if c.startswith("n_") and not c.startswith("n_ed_")]
        sites = np.arange(1, len(n_cols) + 1)
        for row in rows:
            profile = [row[c] for c in n_cols]
            ax.plot(sites, profile, lw=1.2, label=f"{axis}={row[axis]:g}")
        ax.set_xlabel("site")
        ax.set_ylabel("magnon density")
        ax.set_ylim(-0.02, 1.02)
    else:
        y_col = next(c for c in ("J", "J_mps", "J_ed", "J_approx") if c in result.columns)
        all_x, all_y = [], []
        for curve in _curves(rows):
            pts = [(row[axis], row[y_col]) for row in rows if row["curve"] == curve]
            xs = [p[0] for p in pts]
            ys = [p[1] for p in pts]
            style = "o-" if len(xs) <= 40 else "-"
            ax.plot(xs, ys, style, ms=3, lw=1.2, label=curve or y_col)
            all_x += xs
            all_y += ys
        _maybe_log(ax, all_x, all_y)
        ax.set_xlabel(axis)
        ax.set_ylabel("spin current")

    if len(_curves(rows)) > 1 or density:
        ax.legend(fontsize=8)
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
