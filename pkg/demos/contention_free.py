"""One isolated BSS: how extra concurrent links stretch the load a delay
budget can carry.

Sweeps a single-BSS scenario over offered load for single-link operation and
fully concurrent multi-link operation on 2 and 4 channels, then prints the
delay band (p50..p99) and the worst-case aggregation each scheme needed.
Durations are kept short so the demo finishes in under a minute.
"""

from mlosim import pooled_delay_percentile_us, preset_with_load, run

LOADS_GBPS = (0.25, 0.5, 0.75, 1.0)
SEED = 1

print(f"{'load':>6} | " + " | ".join(f"{s:^24}" for s in ("SL", "STR EMLMR:2", "STR EMLMR:4")))
print(f"{'Gb/s':>6} | " + " | ".join(f"{'p50/p99 us (agg p99)':^24}" for _ in range(3)))
print("-" * 88)

for load in LOADS_GBPS:
    cells = []
    for scheme, scenario in preset_with_load("fig2", load * 1e9, duration_s=6.0).items():
        report = run(scenario, seed=SEED)
        br = report.bss_reports[0]
        if br.saturated:
            cells.append(f"{'saturated':^24}")
            continue
        p50 = pooled_delay_percentile_us([report], 50)
        p99 = pooled_delay_percentile_us([report], 99)
        cells.append(f"{p50:7.0f}/{p99:<7.0f} ({br.agg_p99:4d})   ")
    print(f"{load:6.2f} | " + " | ".join(cells))

print("""
Two patterns to notice:
  * at every load the delay band drops as links are added, with diminishing
    returns from 2 to 4 links;
  * 1 Gb/s exceeds what one link can serve, so SL saturates (its queue pins
    at capacity) while the multi-link schemes still hold millisecond tails.
The single-link scheme also aggregates far more heavily: unable to drain in
parallel, it piles arrivals into long PPDUs.
""")
