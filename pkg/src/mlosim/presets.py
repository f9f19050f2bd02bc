"""Built-in scenario presets.

fig2: one isolated BSS; single link vs. fully concurrent operation on 2 or 4
      channels (contention-free upside of multi-link access).
fig4: four mutually in-range BSSs over four orthogonal channels under three
      static allocations: exclusive single links, pairs sharing channel pairs,
      and all four channels shared by everyone (the crowded regime where
      multi-link blocking inflates worst-case delay).
fig5: fig4's baseline plus the allocation workarounds: single-radio EMLSR on
      shared pairs, a reserved+shared hybrid (five channels total), and
      five-channel fully shared overprovisioning.

Presets leave loads unset; set total_load_bps per run or sweep over a grid.
"""

from __future__ import annotations

from dataclasses import replace

from .kernel import NS_PER_S
from .mld import MldConfig, Mode
from .scenario import BssSpec, Scenario

PRESET_NAMES = ("fig2", "fig4", "fig5")

# Default sweep grid, in Gb/s of total offered load.
DEFAULT_LOAD_GRID_GBPS = (0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5)
DEFAULT_SEEDS = (1, 2, 3)


def _mld(mode: Mode, channels: list[int]) -> MldConfig:
    return MldConfig(mode=mode, links=tuple((radio, ch) for radio, ch in enumerate(channels)))


def _scenario(name, channels, mlds, duration_ns, warmup_frac) -> Scenario:
    return Scenario(
        name=name,
        channels=tuple(channels),
        bss=tuple(BssSpec(mld=m) for m in mlds),
        duration_ns=duration_ns,
        warmup_frac=warmup_frac,
    )


def preset(name: str, duration_s: float = 30.0, warmup_frac: float = 0.1) -> dict[str, Scenario]:
    """Scenario templates for a preset, keyed and ordered by scheme name."""
    if name not in PRESET_NAMES:
        raise ValueError(f"unknown preset {name!r}; choose one of {PRESET_NAMES}")
    duration_ns = int(duration_s * NS_PER_S)

    def make(scheme, channels, mlds):
        return _scenario(scheme, channels, mlds, duration_ns, warmup_frac)

    if name == "fig2":
        return {
            "SL": make("SL", [0], [_mld(Mode.SL, [0])]),
            "STR EMLMR:2": make("STR EMLMR:2", [0, 1], [_mld(Mode.STR_EMLMR, [0, 1])]),
            "STR EMLMR:4": make("STR EMLMR:4", [0, 1, 2, 3], [_mld(Mode.STR_EMLMR, [0, 1, 2, 3])]),
        }

    four = [0, 1, 2, 3]
    sl4 = make("SL", four, [_mld(Mode.SL, [i]) for i in four])
    # Two disjoint BSS pairs, each pair sharing its own channel pair.
    pair_channels = [[0, 1], [0, 1], [2, 3], [2, 3]]
    emlmr2 = make("STR EMLMR:2", four, [_mld(Mode.STR_EMLMR, chs) for chs in pair_channels])
    emlmr4 = make("STR EMLMR:4", four, [_mld(Mode.STR_EMLMR, four) for _ in four])

    if name == "fig4":
        return {"SL": sl4, "STR EMLMR:2": emlmr2, "STR EMLMR:4": emlmr4}

    five = [0, 1, 2, 3, 4]
    emlsr2 = make("EMLSR:2", four, [_mld(Mode.EMLSR, chs) for chs in pair_channels])
    # One reserved channel per BSS plus channel 4 shared by all: 5 channels.
    hybrid = make("STR EMLMR:1+1", five, [_mld(Mode.HYBRID_1P1, [i, 4]) for i in four])
    emlmr5 = make("STR EMLMR:5", five, [_mld(Mode.STR_EMLMR, five) for _ in four])
    return {
        "SL": sl4,
        "STR EMLMR:2": emlmr2,
        "EMLSR:2": emlsr2,
        "STR EMLMR:1+1": hybrid,
        "STR EMLMR:5": emlmr5,
    }


def preset_with_load(
    name: str, total_load_bps: float, duration_s: float = 30.0, warmup_frac: float = 0.1
) -> dict[str, Scenario]:
    return {
        scheme: replace(sc, total_load_bps=total_load_bps)
        for scheme, sc in preset(name, duration_s, warmup_frac).items()
    }
