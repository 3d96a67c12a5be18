"""Render one figure per spec, deterministically.

Uses the Agg backend with fixed styles and strips volatile metadata so
re-rendering identical inputs yields byte-identical image files. Empty
input tables produce blank axes with a warning annotation rather than
an error.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

from .specs import FigureSpec, load_table  # noqa: E402

DPI = 150
FIGSIZE = (6.0, 4.5)


def render(spec: FigureSpec):
    """Produce spec.output_path from spec.input_path; returns the path."""
    df = load_table(spec)
    if spec.style:
        plt.style.use(spec.style)
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI,
                           subplot_kw={"projection": "3d"}
                           if spec.kind == "surface" and len(df) else {})
    try:
        if df.empty:
            ax.text(0.5, 0.5, f"no data in {spec.input_path.name}",
                    ha="center", va="center", transform=ax.transAxes,
                    color="tab:red")
        else:
            _DRAWERS[spec.kind](ax, df, spec)
        if spec.title:
            ax.set_title(spec.title)
        if spec.xlabel:
            ax.set_xlabel(spec.xlabel)
        if spec.ylabel:
            ax.set_ylabel(spec.ylabel)
        spec.output_path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(spec.output_path, metadata=_clean_metadata(spec.output_path))
    finally:
        plt.close(fig)
    return spec.output_path


def _clean_metadata(path) -> dict:
    # both PNG ("Software") and SVG ("Date") default metadata vary by
    # environment; drop them so identical inputs give identical bytes
    suffix = path.suffix.lower()
    if suffix == ".png":
        return {"Software": None}
    if suffix == ".svg":
        return {"Date": None}
    return {}


def _grid_pivot(df: pd.DataFrame, value: str):
    pivot = df.pivot_table(index="beta1", columns="beta2", values=value,
                           sort=True)
    return (pivot.columns.to_numpy(dtype=float),
            pivot.index.to_numpy(dtype=float),
            pivot.to_numpy(dtype=float))


def _draw_heatmap(ax, df, spec):
    b2, b1, z = _grid_pivot(df, "a_over_ab")
    mesh = ax.pcolormesh(b2, b1, z, cmap="coolwarm", vmin=0.0, vmax=1.0,
                         shading="nearest")
    ax.figure.colorbar(mesh, ax=ax, label="a / (a + b)")
    if z.shape[0] > 1 and z.shape[1] > 1:
        ax.contour(b2, b1, z, levels=[0.5], colors="black", linewidths=1.2)
    ax.set_xlabel(spec.xlabel or "beta2")
    ax.set_ylabel(spec.ylabel or "beta1")


def _draw_surface(ax, df, spec):
    value = spec.column or "a"
    b2, b1, z = _grid_pivot(df, value)
    bb2, bb1 = np.meshgrid(b2, b1)
    ax.plot_surface(bb1, bb2, z, cmap="viridis", linewidth=0)
    ax.set_xlabel(spec.xlabel or "beta1")
    ax.set_ylabel(spec.ylabel or "beta2")
    ax.set_zlabel(value)


def _draw_contour(ax, df, spec):
    pts = df.sort_values(["beta1", "beta2"])
    ax.plot(pts["beta1"], pts["beta2"], "o-", ms=3, color="tab:green")
    lim = max(float(pts["beta1"].max()), float(pts["beta2"].max()), 1.0)
    ax.plot([0, lim], [0, lim], ":", color="gray", lw=0.8)
    ax.set_xlabel(spec.xlabel or "beta1")
    ax.set_ylabel(spec.ylabel or "beta2")


def _draw_level_curves(ax, df, spec):
    metric = spec.column or "supporter"
    mean_col = f"mu_{metric}_mean"
    std_col = f"mu_{metric}_std"
    for info, color in ((1, "tab:red"), (2, "tab:blue")):
        part = df[df["info"] == info].sort_values("level")
        if part.empty:
            continue
        levels = part["level"].to_numpy(dtype=float)
        mean = part[mean_col].to_numpy(dtype=float)
        ax.plot(levels, mean, "o-", color=color, label=f"information {info}")
        if std_col in part.columns:
            std = pd.to_numeric(part[std_col], errors="coerce").to_numpy()
            if np.isfinite(std).all():
                ax.fill_between(levels, mean - std, mean + std, alpha=0.2,
                                color=color)
    ax.legend()
    ax.set_xlabel(spec.xlabel or "level L")
    ax.set_ylabel(spec.ylabel or f"mu_{metric}")


def _draw_timeseries(ax, df, spec):
    order = ["S", "A", "B", "AB", "a", "b"]
    colors = ["gray", "tab:red", "tab:blue", "tab:purple", "red", "blue"]
    styles = ["-", "--", "--", "--", "-", "-"]
    for name, color, style in zip(order, colors, styles):
        ax.plot(df["t"], df[name], style, color=color, label=name, lw=1.4)
    ax.legend(ncol=3)
    ax.set_xlabel(spec.xlabel or "time")
    ax.set_ylabel(spec.ylabel or "fraction of nodes")


def _draw_best_response(ax, df, spec):
    defined = df[df["undefined"] == 0]
    for _, row in defined.iterrows():
        lo, hi = float(row["lo"]), float(row["hi"])
        ax.plot([row["opponent_pos"]] * 2, [lo, hi], color="tab:blue", lw=2)
        for val, is_open in ((lo, row["lo_open"]), (hi, row["hi_open"])):
            face = "white" if is_open else "tab:blue"
            ax.plot(row["opponent_pos"], val, "o", ms=3, mfc=face,
                    mec="tab:blue")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_xlabel(spec.xlabel or "opponent position")
    ax.set_ylabel(spec.ylabel or "best response")


_DRAWERS = {
    "heatmap": _draw_heatmap,
    "surface": _draw_surface,
    "contour": _draw_contour,
    "level_curves": _draw_level_curves,
    "timeseries": _draw_timeseries,
    "best_response": _draw_best_response,
}
