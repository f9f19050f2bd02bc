"""Load sweeps with multi-seed replication, and CSV/JSON row export.

Cells of the (scheme, load, seed) cross product are independent runs; they may
execute in parallel worker processes and the output ordering is always the
same. One exported row corresponds to one (scheme, bss, load, seed) cell.
"""

from __future__ import annotations

import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .engine import run
from .metrics import RunReport


@dataclass(frozen=True)
class SweepSpec:
    scenarios: dict  # scheme name -> Scenario template (loads unset)
    loads_bps: tuple[float, ...]
    seeds: tuple[int, ...] = (1, 2, 3)


@dataclass
class CellResult:
    scheme: str
    load_bps: float
    seed: int
    report: Optional[RunReport] = None
    error: Optional[str] = None


def _execute_cell(args) -> CellResult:
    scheme, scenario, load_bps, seed, keep_samples = args
    try:
        report = run(scenario.with_total_load(load_bps), seed, keep_samples=keep_samples)
        return CellResult(scheme, load_bps, seed, report=report)
    except Exception as exc:  # isolate per-cell failures
        return CellResult(scheme, load_bps, seed, error=f"{type(exc).__name__}: {exc}")


def sweep(spec: SweepSpec, jobs: int = 1, keep_samples: bool = False) -> list[CellResult]:
    cells = [
        (scheme, scenario, load, seed, keep_samples)
        for scheme, scenario in spec.scenarios.items()
        for load in spec.loads_bps
        for seed in spec.seeds
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_execute_cell, cells, chunksize=1))
    else:
        results = [_execute_cell(cell) for cell in cells]
    for res in results:
        if res.error is not None:
            print(f"sweep cell failed: {res.scheme} @ {res.load_bps} bps seed {res.seed}: "
                  f"{res.error}", file=sys.stderr)
    return results


def sweep_rows(results: list[CellResult]) -> list[dict]:
    """Flatten successful cells into one row per (scheme, bss, load, seed)."""
    rows = []
    for res in results:
        if res.report is None:
            continue
        for br in res.report.bss_reports:
            row = {
                "scheme": res.scheme,
                "bss": br.bss,
                "load_gbps": res.load_bps / 1e9,
                "seed": res.seed,
                "delay_p50_us": br.delay_p50_us,
                "delay_p95_us": br.delay_p95_us,
                "delay_p99_us": br.delay_p99_us,
                "delay_mean_us": br.delay_mean_us,
                "throughput_bps": br.throughput_bps,
                "agg_p50": br.agg_p50,
                "agg_p99": br.agg_p99,
                "occupancy": br.occupancy,
                "starvation_frac": br.starvation_frac,
                "drops": br.drops,
                "saturated": br.saturated,
            }
            rows.append(row)
    return rows


def _flatten_occupancy(rows: list[dict]) -> tuple[list[dict], list[str]]:
    max_n = 0
    for row in rows:
        occ = row.get("occupancy")
        if occ:
            max_n = max(max_n, len(occ) - 1)
    occ_cols = [f"occ_{n}" for n in range(max_n + 1)]
    flat = []
    for row in rows:
        out = {k: v for k, v in row.items() if k != "occupancy"}
        occ = row.get("occupancy") or []
        for n, col in enumerate(occ_cols):
            out[col] = occ[n] if n < len(occ) else None
        flat.append(out)
    return flat, occ_cols


CSV_KEY_COLUMNS = ["scheme", "bss", "load_gbps", "seed"]
CSV_METRIC_COLUMNS = [
    "delay_p50_us",
    "delay_p95_us",
    "delay_p99_us",
    "delay_mean_us",
    "throughput_bps",
    "agg_p50",
    "agg_p99",
    "starvation_frac",
    "drops",
    "saturated",
]


def write_csv(rows: list[dict], path: str) -> None:
    flat, occ_cols = _flatten_occupancy(rows)
    columns = CSV_KEY_COLUMNS + CSV_METRIC_COLUMNS[:-3] + occ_cols + CSV_METRIC_COLUMNS[-3:]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns, restval="")
        writer.writeheader()
        for row in flat:
            writer.writerow({k: _csv_value(row.get(k)) for k in columns})


def _csv_value(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, float):
        return repr(value)
    return value


def write_json(rows: list[dict], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(rows, fh, indent=1)
        fh.write("\n")
