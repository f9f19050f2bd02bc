"""mlosim: deterministic discrete-event simulation of Wi-Fi multi-link
channel access (SL, EMLSR, STR EMLMR) focused on packet delay."""

from .dcf import DcfParams
from .engine import SimulationRun, run
from .kernel import NS_PER_MS, NS_PER_S, NS_PER_US, SchedulingError, Simulator, rng_stream
from .metrics import (
    RunReport,
    percentile,
    pooled_agg_percentile,
    pooled_delay_percentile_us,
    pooled_samples_ns,
)
from .mld import MldConfig, Mode
from .phy import AckParams, PhyConfig, data_rate_bps, exchange_airtime_ns, ppdu_airtime_ns
from .presets import DEFAULT_LOAD_GRID_GBPS, preset, preset_with_load
from .scenario import BssSpec, Scenario, ScenarioError, load_scenario, save_scenario
from .sweep import SweepSpec, sweep, sweep_rows, write_csv, write_json
from .traffic import PoissonSource, split_evenly

__version__ = "0.1.0"

__all__ = [
    "AckParams",
    "BssSpec",
    "DEFAULT_LOAD_GRID_GBPS",
    "DcfParams",
    "MldConfig",
    "Mode",
    "NS_PER_MS",
    "NS_PER_S",
    "NS_PER_US",
    "PhyConfig",
    "PoissonSource",
    "RunReport",
    "Scenario",
    "ScenarioError",
    "SchedulingError",
    "SimulationRun",
    "Simulator",
    "SweepSpec",
    "data_rate_bps",
    "exchange_airtime_ns",
    "load_scenario",
    "percentile",
    "pooled_agg_percentile",
    "pooled_delay_percentile_us",
    "pooled_samples_ns",
    "ppdu_airtime_ns",
    "preset",
    "preset_with_load",
    "rng_stream",
    "run",
    "save_scenario",
    "split_evenly",
    "sweep",
    "sweep_rows",
    "write_csv",
    "write_json",
]
