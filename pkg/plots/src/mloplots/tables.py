"""Loading and shaping of sweep CSV exports.

The CSV schema is the only contract with the simulator: one row per
(scheme, bss, load, seed) with delay percentiles in microseconds, aggregation
percentiles, occ_0..occ_k occupancy columns, starvation and drop counters.
"""

from __future__ import annotations

import pandas as pd

KEY_COLUMNS = ["scheme", "bss", "load_gbps", "seed"]
DELAY_COLUMNS = ["delay_p50_us", "delay_p95_us", "delay_p99_us"]


class MissingColumnsError(ValueError):
    def __init__(self, missing: list[str], path: str):
        self.missing = missing
        super().__init__(f"{path}: missing required columns: {', '.join(missing)}")


def load_table(path: str, required: list[str]) -> pd.DataFrame:
    """Read a sweep CSV and verify the columns a chart needs, by name."""
    table = pd.read_csv(path)
    missing = [col for col in KEY_COLUMNS + required if col not in table.columns]
    if missing:
        raise MissingColumnsError(missing, path)
    if table.empty:
        raise ValueError(f"{path}: no data rows")
    return table


def occupancy_columns(table: pd.DataFrame) -> list[str]:
    cols = sorted(
        (c for c in table.columns if c.startswith("occ_")),
        key=lambda c: int(c.split("_")[1]),
    )
    if not cols:
        raise MissingColumnsError(["occ_0..occ_k"], "occupancy chart input")
    return cols


def mean_over_cells(table: pd.DataFrame, columns: list[str]) -> pd.DataFrame:
    """Average metric columns over BSSs and seed replicates per (scheme, load).

    Row order of first appearance is preserved for schemes so chart legends
    follow the CSV, not alphabetical order.
    """
    out = (
        table.groupby(["scheme", "load_gbps"], sort=False)[columns]
        .mean()
        .reset_index()
        .sort_values("load_gbps", kind="stable")
    )
    return out


def scheme_order(table: pd.DataFrame) -> list[str]:
    return list(dict.fromkeys(table["scheme"]))
