"""Wires a validated scenario into kernel entities and executes one run.

A SimulationRun owns every mutable object of a run (simulator, channels,
devices, trackers); independent runs share nothing, so they may execute
concurrently on separate workers.
"""

from __future__ import annotations

from .kernel import STREAM_DCF, STREAM_TRAFFIC, Simulator, rng_stream
from .medium import Channel
from .metrics import BssTracker, RunReport, build_bss_report
from .mld import Mld
from .scenario import Scenario
from .traffic import PoissonSource


class SimulationRun:
    """One self-contained run; exposes internals for white-box property tests."""

    def __init__(self, scenario: Scenario, seed: int, trace: bool = False):
        scenario.validated()
        self.scenario = scenario
        self.seed = seed
        self.sim = Simulator()
        self.warmup_ns = scenario.warmup_ns
        self.channels = {
            cid: Channel(self.sim, cid, mark_collisions=scenario.collisions, trace=trace)
            for cid in scenario.channels
        }
        loads = scenario.resolved_loads()
        self.trackers: list[BssTracker] = []
        self.mlds: list[Mld] = []
        self.sources: list[PoissonSource] = []
        for i, spec in enumerate(scenario.bss):
            bss_channels = [self.channels[ch] for _radio, ch in spec.mld.links]
            tracker = BssTracker(
                self.sim, i, len(spec.mld.links), bss_channels, self.warmup_ns,
                scenario.queue_capacity,
            )
            link_rngs = [rng_stream(seed, STREAM_DCF, i, j) for j in range(len(spec.mld.links))]
            mld = Mld(
                self.sim,
                i,
                spec.mld,
                self.channels,
                scenario.phy,
                scenario.ack,
                scenario.dcf,
                scenario.packet_size_bytes,
                scenario.queue_capacity,
                tracker,
                link_rngs,
            )
            source = PoissonSource(
                self.sim, rng_stream(seed, STREAM_TRAFFIC, i), mld, i,
                loads[i], scenario.packet_size_bytes,
            )
            self.trackers.append(tracker)
            self.mlds.append(mld)
            self.sources.append(source)

    def run(self, keep_samples: bool = True) -> RunReport:
        duration = self.scenario.duration_ns
        for source in self.sources:
            source.start(0)
        self.sim.run_until(duration)
        window = duration - self.warmup_ns
        for tracker in self.trackers:
            tracker.finalize(duration)
        return RunReport(
            scheme=self.scenario.name,
            seed=self.seed,
            duration_ns=duration,
            warmup_ns=self.warmup_ns,
            scenario=self.scenario.to_dict(),
            bss_reports=[build_bss_report(t, window, keep_samples) for t in self.trackers],
        )


def run(scenario: Scenario, seed: int, keep_samples: bool = True) -> RunReport:
    """Execute one scenario deterministically: same (scenario, seed), same report."""
    return SimulationRun(scenario, seed).run(keep_samples=keep_samples)
