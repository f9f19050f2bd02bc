"""Console entry points: one command per chart.

    plot_delay_bands  --csv sweep.csv --out bands.png [--schemes A,B] [--vector]
    plot_occupancy    --csv sweep.csv --out occupancy.png [--vector]
    plot_grouped_delay --csv sweep.csv --out delays.png [--vector]

Exit code 2 on bad input (missing file, missing columns, empty data).
"""

from __future__ import annotations

import argparse
import sys

from .charts import delay_bands, grouped_delay_bars, occupancy_bars, save_figure


def _parser(description: str, with_schemes: bool = False) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument("--csv", required=True, help="sweep export CSV")
    parser.add_argument("--out", required=True, help="output figure path (.png/.pdf/.svg)")
    parser.add_argument("--vector", action="store_true", help="write PDF instead of PNG")
    if with_schemes:
        parser.add_argument("--schemes", default=None, help="comma-separated subset to draw")
    return parser


def _run(builder, args, **kwargs) -> int:
    try:
        fig, _data = builder(args.csv, **kwargs)
        path = save_figure(fig, args.out, vector=args.vector)
    except (OSError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    print(f"wrote {path}")
    return 0


def main_delay_bands(argv=None) -> int:
    args = _parser("p50..p99 delay bands vs load, aggregation p99 dashed", True).parse_args(argv)
    schemes = args.schemes.split(",") if args.schemes else None
    return _run(delay_bands, args, schemes=schemes)


def main_occupancy(argv=None) -> int:
    args = _parser("stacked link-occupancy probability bars").parse_args(argv)
    return _run(occupancy_bars, args)


def main_grouped_delay(argv=None) -> int:
    args = _parser("grouped delay percentile bars, three opacities").parse_args(argv)
    return _run(grouped_delay_bars, args)


if __name__ == "__main__":
    sys.exit(main_delay_bands())
