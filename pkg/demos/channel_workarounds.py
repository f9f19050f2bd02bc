"""Side-stepping the multi-link starvation anomaly by allocation, not radios.

Compares, on the same crowded 4-BSS scenario, three ways out:
  * EMLSR:2       single radio listening on two shared channels (4 channels)
  * STR EMLMR:1+1 one reserved channel per BSS plus one shared (5 channels)
  * STR EMLMR:5   five radios, five fully shared channels (5 channels)
against the SL and STR EMLMR:2 baselines, at a low and a high total load.
"""

from mlosim import pooled_delay_percentile_us, preset_with_load, run

SCHEMES = ("SL", "STR EMLMR:2", "EMLSR:2", "STR EMLMR:1+1", "STR EMLMR:5")


def table(load_gbps: float, duration_s: float) -> None:
    print(f"=== total load {load_gbps} Gb/s")
    print(f"  {'scheme':>14} {'p50':>8} {'p95':>9} {'p99':>9}  (us)")
    for scheme, scenario in preset_with_load("fig5", load_gbps * 1e9, duration_s=duration_s).items():
        report = run(scenario, seed=1)
        p = [pooled_delay_percentile_us([report], q) for q in (50, 95, 99)]
        print(f"  {scheme:>14} {p[0]:8.0f} {p[1]:9.0f} {p[2]:9.0f}")
    print()


table(0.1, 8.0)
table(2.5, 12.0)

print("""
At 0.1 Gb/s every scheme is quick and juggling five independent backoffs
(STR EMLMR:5) wins the median outright. At 2.5 Gb/s the picture inverts:
overprovisioned fully shared channels still let one busy neighbor block
everyone (the tail stays heavy), while the hybrid reserved+shared allocation
caps the worst case near the single-link baseline because each BSS always
keeps one contention-free escape channel. The single-radio EMLSR tracks the
single-link baseline closely at a fraction of the hardware, trailing it
slightly at high load only because shared channels admit collisions that an
exclusive channel never sees.
""")
