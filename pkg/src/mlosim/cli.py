"""Command-line surface: run one scenario, sweep a spec file, or run a preset.

Exit codes: 0 on success, 2 on scenario/spec validation failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

import yaml

from .engine import run
from .kernel import NS_PER_S
from .presets import DEFAULT_LOAD_GRID_GBPS, DEFAULT_SEEDS, PRESET_NAMES, preset
from .scenario import Scenario, ScenarioError, load_scenario
from .sweep import SweepSpec, sweep, sweep_rows, write_csv, write_json


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=".", help="output directory (default: current)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--duration", type=float, default=None, metavar="SECONDS",
                        help="override simulated duration")
    parser.add_argument("--warmup", type=float, default=None, metavar="FRACTION",
                        help="override warmup fraction")


def _apply_overrides(scenario: Scenario, args) -> Scenario:
    if args.duration is not None:
        scenario = replace(scenario, duration_ns=int(args.duration * NS_PER_S))
    if args.warmup is not None:
        scenario = replace(scenario, warmup_frac=args.warmup)
    return scenario


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.split(",") if tok.strip())


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(",") if tok.strip())


def _write_rows(rows, out_dir: str, stem: str, fmt: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"{stem}.{fmt}")
    if fmt == "csv":
        write_csv(rows, path)
    else:
        write_json(rows, path)
    return path


def _summarize(rows) -> None:
    for row in rows:
        p99 = row["delay_p99_us"]
        p99_txt = f"{p99:10.1f}" if p99 is not None else "       n/a"
        sat = " SATURATED" if row["saturated"] else ""
        print(
            f"{row['scheme']:>14}  load={row['load_gbps']:.3f} Gb/s  seed={row['seed']}  "
            f"bss={row['bss']}  p99={p99_txt} us  drops={row['drops']}{sat}"
        )


def cmd_run(args) -> int:
    scenario = load_scenario(args.scenario)
    scenario = _apply_overrides(scenario, args)
    report = run(scenario.validated(), args.seed)
    os.makedirs(args.out, exist_ok=True)
    stem = f"{scenario.name.replace(' ', '_').replace(':', '')}_seed{args.seed}"
    if args.format == "json":
        path = os.path.join(args.out, f"{stem}.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, indent=1)
            fh.write("\n")
    else:
        total = scenario.total_load_bps
        if total is None:
            total = sum(scenario.resolved_loads())
        rows = []
        for br in report.bss_reports:
            rows.append(
                {
                    "scheme": scenario.name,
                    "bss": br.bss,
                    "load_gbps": total / 1e9,
                    "seed": args.seed,
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
            )
        path = _write_rows(rows, args.out, stem, "csv")
        _summarize(rows)
    print(f"wrote {path}")
    return 0


def _load_sweep_spec(path: str, args) -> SweepSpec:
    with open(path, "r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh)
    if not isinstance(data, dict):
        raise ScenarioError([f"{path}: expected a mapping at top level"])
    duration_s = float(data.get("duration_s", 30.0))
    warmup = float(data.get("warmup_frac", 0.1))
    if "preset" in data:
        scenarios = preset(data["preset"], duration_s=duration_s, warmup_frac=warmup)
    elif "scenarios" in data:
        scenarios = {
            name: Scenario.from_dict(dict(sc, name=name))
            for name, sc in data["scenarios"].items()
        }
    else:
        raise ScenarioError([f"{path}: needs either 'preset' or 'scenarios'"])
    loads = tuple(float(x) * 1e9 for x in data.get("loads_gbps", DEFAULT_LOAD_GRID_GBPS))
    seeds = tuple(int(s) for s in data.get("seeds", DEFAULT_SEEDS))
    if args.duration is not None or args.warmup is not None:
        scenarios = {name: _apply_overrides(sc, args) for name, sc in scenarios.items()}
    return SweepSpec(scenarios=scenarios, loads_bps=loads, seeds=seeds)


def cmd_sweep(args) -> int:
    spec = _load_sweep_spec(args.spec, args)
    for scenario in spec.scenarios.values():
        scenario.with_total_load(spec.loads_bps[0]).validated()
    results = sweep(spec, jobs=args.jobs)
    rows = sweep_rows(results)
    stem = os.path.splitext(os.path.basename(args.spec))[0] + "_results"
    path = _write_rows(rows, args.out, stem, args.format)
    print(f"wrote {path} ({len(rows)} rows)")
    return 0 if all(r.error is None for r in results) else 1


def cmd_preset(args) -> int:
    scenarios = preset(
        args.name,
        duration_s=args.duration if args.duration is not None else 30.0,
        warmup_frac=args.warmup if args.warmup is not None else 0.1,
    )
    loads = tuple(x * 1e9 for x in (args.load_grid or DEFAULT_LOAD_GRID_GBPS))
    seeds = tuple(args.seeds or DEFAULT_SEEDS)
    spec = SweepSpec(scenarios=scenarios, loads_bps=loads, seeds=seeds)
    results = sweep(spec, jobs=args.jobs)
    rows = sweep_rows(results)
    path = _write_rows(rows, args.out, f"{args.name}_sweep", args.format)
    print(f"wrote {path} ({len(rows)} rows)")
    return 0 if all(r.error is None for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlosim",
        description="Discrete-event simulator of Wi-Fi multi-link channel access delay",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a single scenario file")
    p_run.add_argument("scenario", help="scenario YAML file")
    p_run.add_argument("--seed", type=int, default=1)
    _add_common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a sweep spec file")
    p_sweep.add_argument("spec", help="sweep YAML file")
    p_sweep.add_argument("--jobs", type=int, default=1)
    _add_common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_preset = sub.add_parser("preset", help="sweep a built-in preset")
    p_preset.add_argument("name", choices=PRESET_NAMES)
    p_preset.add_argument("--load-grid", type=_parse_floats, default=None,
                          metavar="GBPS[,GBPS...]")
    p_preset.add_argument("--seeds", type=_parse_ints, default=None, metavar="N[,N...]")
    p_preset.add_argument("--jobs", type=int, default=1)
    _add_common(p_preset)
    p_preset.set_defaults(func=cmd_preset)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
