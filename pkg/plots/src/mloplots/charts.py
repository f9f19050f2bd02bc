"""The three chart builders.

Each builder returns (figure, data) where data holds exactly the series that
were drawn, so tests assert values rather than pixels. Builders are read-only
consumers of the CSV tables; rendering identical input yields identical data.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .tables import (
    DELAY_COLUMNS,
    load_table,
    mean_over_cells,
    occupancy_columns,
    scheme_order,
)

_COLORS = plt.rcParams["axes.prop_cycle"].by_key()["color"]


def delay_bands(csv_path: str, schemes: list[str] | None = None):
    """Shaded p50..p99 delay band per scheme vs load, log delay axis, with the
    99th-percentile aggregate count overlaid as dashed lines on a twin axis."""
    table = load_table(csv_path, DELAY_COLUMNS + ["agg_p99"])
    if schemes:
        table = table[table["scheme"].isin(schemes)]
        if table.empty:
            raise ValueError(f"{csv_path}: no rows for schemes {schemes}")
    cells = mean_over_cells(table, DELAY_COLUMNS + ["agg_p99"])

    fig, ax = plt.subplots(figsize=(7, 4.4))
    agg_ax = ax.twinx()
    data = {}
    for i, scheme in enumerate(scheme_order(cells)):
        rows = cells[cells["scheme"] == scheme]
        loads = rows["load_gbps"].to_numpy()
        p50 = rows["delay_p50_us"].to_numpy()
        p99 = rows["delay_p99_us"].to_numpy()
        agg = rows["agg_p99"].to_numpy()
        color = _COLORS[i % len(_COLORS)]
        ax.fill_between(loads, p50, p99, alpha=0.35, color=color, label=scheme)
        ax.plot(loads, p50, color=color, lw=1.0)
        ax.plot(loads, p99, color=color, lw=1.0)
        agg_ax.plot(loads, agg, color=color, ls="--", lw=1.2)
        data[scheme] = {"load_gbps": loads, "p50_us": p50, "p99_us": p99, "agg_p99": agg}
    ax.set_yscale("log")
    ax.set_xlabel("offered load (Gb/s)")
    ax.set_ylabel("packet delay, p50..p99 band (us)")
    agg_ax.set_ylabel("aggregated packets, p99 (dashed)")
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    return fig, data


def occupancy_bars(csv_path: str):
    """Stacked P(n links used | active) bars, one bar per (scheme, load)."""
    table = load_table(csv_path, [])
    occ_cols = occupancy_columns(table)
    cells = mean_over_cells(table.dropna(subset=[occ_cols[0]]), occ_cols)
    if cells.empty:
        raise ValueError(f"{csv_path}: occupancy columns hold no data")

    loads = sorted(cells["load_gbps"].unique())
    schemes = scheme_order(cells)
    fig, ax = plt.subplots(figsize=(7, 4.4))
    width = 0.8 / len(schemes)
    data = {}
    shades = np.linspace(0.85, 0.15, len(occ_cols))
    for i, scheme in enumerate(schemes):
        rows = cells[cells["scheme"] == scheme].set_index("load_gbps")
        for j, load in enumerate(loads):
            if load not in rows.index:
                continue
            stack = rows.loc[load, occ_cols].to_numpy(dtype=float)
            stack = np.nan_to_num(stack)
            x = j + (i - (len(schemes) - 1) / 2) * width
            bottom = 0.0
            for level, value in enumerate(stack):
                ax.bar(
                    x,
                    value,
                    width=width * 0.9,
                    bottom=bottom,
                    color=_COLORS[i % len(_COLORS)],
                    alpha=float(shades[level]),
                    edgecolor="white",
                    linewidth=0.3,
                )
                bottom += value
            data[(scheme, load)] = stack
    ax.set_xticks(range(len(loads)))
    ax.set_xticklabels([f"{ld:g}" for ld in loads])
    ax.set_xlabel("offered load (Gb/s)")
    ax.set_ylabel("P(n links used | BSS active), stacked over n")
    ax.set_ylim(0, 1.02)
    handles = [plt.Rectangle((0, 0), 1, 1, color=_COLORS[i % len(_COLORS)]) for i in range(len(schemes))]
    ax.legend(handles, schemes, loc="lower right", fontsize=8)
    fig.tight_layout()
    return fig, data


def grouped_delay_bars(csv_path: str):
    """Grouped bars per (scheme, load): p50/p95/p99 at high/medium/low opacity."""
    table = load_table(csv_path, DELAY_COLUMNS)
    cells = mean_over_cells(table, DELAY_COLUMNS)
    loads = sorted(cells["load_gbps"].unique())
    schemes = scheme_order(cells)
    fig, ax = plt.subplots(figsize=(7.5, 4.4))
    width = 0.8 / len(schemes)
    opacities = (0.95, 0.55, 0.30)  # p50 / p95 / p99
    data = {}
    for i, scheme in enumerate(schemes):
        rows = cells[cells["scheme"] == scheme].set_index("load_gbps")
        for j, load in enumerate(loads):
            if load not in rows.index:
                continue
            values = rows.loc[load, DELAY_COLUMNS].to_numpy(dtype=float)
            x = j + (i - (len(schemes) - 1) / 2) * width
            # draw tallest first so the darker, shorter bars stay visible
            for value, alpha in sorted(zip(values, opacities), reverse=True):
                ax.bar(
                    x,
                    value,
                    width=width * 0.9,
                    color=_COLORS[i % len(_COLORS)],
                    alpha=alpha,
                    edgecolor="none",
                )
            data[(scheme, load)] = values
    ax.set_yscale("log")
    ax.set_xticks(range(len(loads)))
    ax.set_xticklabels([f"{ld:g}" for ld in loads])
    ax.set_xlabel("offered load (Gb/s)")
    ax.set_ylabel("delay (us): p50 dark, p95 medium, p99 light")
    handles = [plt.Rectangle((0, 0), 1, 1, color=_COLORS[i % len(_COLORS)]) for i in range(len(schemes))]
    ax.legend(handles, schemes, loc="upper left", fontsize=8)
    fig.tight_layout()
    return fig, data


def save_figure(fig, out_path: str, vector: bool = False) -> str:
    """Write the figure; the extension picks the backend format. The vector
    flag redirects a raster extension to PDF."""
    path = out_path
    if vector and path.lower().endswith(".png"):
        path = path[:-4] + ".pdf"
    fig.savefig(path)
    plt.close(fig)
    return path
