"""Run statistics: delay samples, aggregation histograms, time-weighted
occupancy and starvation, throughput, drops, and report assembly.

All time integrals are clipped to the post-warmup measurement window. Trackers
cache the state that held over the elapsed interval and integrate before every
state change, so channel callbacks may arrive after the channel has already
mutated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .kernel import NS_PER_US


def percentile(samples, p: float):
    """Nearest-rank percentile: the ceil(p/100 * n)-th order statistic."""
    n = len(samples)
    if n == 0:
        raise ValueError("percentile of an empty sample set")
    if not 0.0 < p <= 100.0:
        raise ValueError(f"percentile p={p} outside (0, 100]")
    k = math.ceil(round(p * n / 100.0, 9))
    if k < 1:
        k = 1
    arr = np.sort(np.asarray(samples))
    return arr[k - 1]


def _percentile_sorted(arr: np.ndarray, p: float):
    k = math.ceil(round(p * len(arr) / 100.0, 9))
    return arr[max(k, 1) - 1]


class BssTracker:
    """Per-BSS accumulators, fed by the MLD, the traffic source, and channel
    occupancy watchers."""

    __slots__ = (
        "sim",
        "bss",
        "warmup_ns",
        "channels",
        "n_links",
        "queue_capacity",
        "arrivals",
        "arrivals_postwarmup",
        "delays_ns",
        "agg_sizes",
        "delivered_bits",
        "drops_queue",
        "drops_retry",
        "queue_len",
        "ntx",
        "starved",
        "_last_ns",
        "occ_ns",
        "active_ns",
        "starved_ns",
        "qlen_integral",
        "wait_sum_ns",
        "wait_count",
    )

    def __init__(self, sim, bss: int, n_links: int, channels: list, warmup_ns: int, queue_capacity: int):
        self.sim = sim
        self.bss = bss
        self.warmup_ns = warmup_ns
        self.channels = channels
        self.n_links = n_links
        self.queue_capacity = queue_capacity
        self.arrivals = 0
        self.arrivals_postwarmup = 0
        self.delays_ns: list[int] = []
        self.agg_sizes: list[int] = []
        self.delivered_bits = 0
        self.drops_queue = 0
        self.drops_retry = 0
        self.queue_len = 0
        self.ntx = 0
        self.starved = False
        self._last_ns = 0
        self.occ_ns = [0] * (n_links + 1)
        self.active_ns = 0
        self.starved_ns = 0
        self.qlen_integral = 0
        self.wait_sum_ns = 0
        self.wait_count = 0
        for ch in channels:
            ch.watch(self.on_channel_change)

    # -- time integration --------------------------------------------------

    def _touch(self) -> None:
        now = self.sim._now
        lo = self._last_ns
        if lo < self.warmup_ns:
            lo = self.warmup_ns
        if now > lo:
            dt = now - lo
            qlen = self.queue_len
            self.qlen_integral += qlen * dt
            if qlen > 0 or self.ntx > 0:
                self.active_ns += dt
                self.occ_ns[self.ntx] += dt
                if self.starved:
                    self.starved_ns += dt
        self._last_ns = now

    def _compute_starved(self) -> bool:
        bss = self.bss
        for ch in self.channels:
            foreign = False
            for tx in ch.active:
                if tx.owner != bss:
                    foreign = True
                    break
            if not foreign:
                return False
        return True

    # -- state-change hooks --------------------------------------------------

    def on_channel_change(self) -> None:
        self._touch()
        self.starved = self._compute_starved()

    def on_queue_len(self, new_len: int) -> None:
        self._touch()
        self.queue_len = new_len

    def on_ntx(self, delta: int) -> None:
        self._touch()
        self.ntx += delta

    def on_queue_drop(self) -> None:
        self.drops_queue += 1

    def on_retry_drop(self, n_packets: int) -> None:
        self.drops_retry += n_packets

    def on_arrival(self, now: int) -> None:
        self.arrivals += 1
        if now >= self.warmup_ns:
            self.arrivals_postwarmup += 1

    def record_delivery(self, batch: list, completion_ns: int) -> None:
        if completion_ns < self.warmup_ns:
            return
        delays = self.delays_ns
        warmup = self.warmup_ns
        for pkt in batch:
            assert completion_ns >= pkt.arrival_ns, "negative packet delay"
            delays.append(completion_ns - pkt.arrival_ns)
            if pkt.formed_ns >= warmup:
                self.wait_sum_ns += pkt.formed_ns - pkt.arrival_ns
                self.wait_count += 1
        self.delivered_bits += len(batch) * batch[0].size_bytes * 8
        self.agg_sizes.append(len(batch))

    def finalize(self, end_ns: int) -> None:
        assert self.sim._now == end_ns
        self._touch()


@dataclass
class BssReport:
    bss: int
    arrivals: int
    delivered: int
    delay_samples_ns: Optional[np.ndarray]
    delay_p50_us: Optional[float]
    delay_p95_us: Optional[float]
    delay_p99_us: Optional[float]
    delay_mean_us: Optional[float]
    throughput_bps: float
    agg_p50: Optional[int]
    agg_p99: Optional[int]
    agg_hist: dict = field(default_factory=dict)
    occupancy: Optional[list] = None
    starvation_frac: Optional[float] = None
    drops_queue: int = 0
    drops_retry: int = 0
    mean_queue_len: float = 0.0
    mean_queue_wait_us: Optional[float] = None
    arrival_rate_pps: float = 0.0
    saturated: bool = False

    @property
    def drops(self) -> int:
        return self.drops_queue + self.drops_retry

    def delay_percentile_us(self, p: float) -> Optional[float]:
        if self.delay_samples_ns is None or len(self.delay_samples_ns) == 0:
            return None
        return float(_percentile_sorted(self.delay_samples_ns, p)) / NS_PER_US

    def to_dict(self, include_samples: bool = False) -> dict:
        d = {
            "bss": self.bss,
            "arrivals": self.arrivals,
            "delivered": self.delivered,
            "n_delay_samples": 0 if self.delay_samples_ns is None else int(len(self.delay_samples_ns)),
            "delay_p50_us": self.delay_p50_us,
            "delay_p95_us": self.delay_p95_us,
            "delay_p99_us": self.delay_p99_us,
            "delay_mean_us": self.delay_mean_us,
            "throughput_bps": self.throughput_bps,
            "agg_p50": self.agg_p50,
            "agg_p99": self.agg_p99,
            "agg_hist": {int(k): int(v) for k, v in sorted(self.agg_hist.items())},
            "occupancy": self.occupancy,
            "starvation_frac": self.starvation_frac,
            "drops_queue": self.drops_queue,
            "drops_retry": self.drops_retry,
            "drops": self.drops,
            "mean_queue_len": self.mean_queue_len,
            "mean_queue_wait_us": self.mean_queue_wait_us,
            "arrival_rate_pps": self.arrival_rate_pps,
            "saturated": self.saturated,
        }
        if include_samples:
            d["delay_samples_ns"] = (
                [] if self.delay_samples_ns is None else [int(x) for x in self.delay_samples_ns]
            )
        return d


@dataclass
class RunReport:
    scheme: str
    seed: int
    duration_ns: int
    warmup_ns: int
    scenario: dict
    bss_reports: list

    def to_dict(self, include_samples: bool = False) -> dict:
        return {
            "scheme": self.scheme,
            "seed": self.seed,
            "duration_ns": self.duration_ns,
            "warmup_ns": self.warmup_ns,
            "scenario": self.scenario,
            "bss": [b.to_dict(include_samples) for b in self.bss_reports],
        }

    def pooled_delay_percentile_us(self, p: float, bss=None) -> Optional[float]:
        samples = pooled_samples_ns([self], bss=bss)
        if len(samples) == 0:
            return None
        return float(percentile(samples, p)) / NS_PER_US


def build_bss_report(tracker: BssTracker, window_ns: int, keep_samples: bool) -> BssReport:
    """Reduce one tracker to its report over the post-warmup window."""
    delays = np.sort(np.asarray(tracker.delays_ns, dtype=np.int64))
    aggs = np.sort(np.asarray(tracker.agg_sizes, dtype=np.int64))
    have_delays = len(delays) > 0
    have_aggs = len(aggs) > 0
    window_s = window_ns / 1e9
    hist: dict[int, int] = {}
    if have_aggs:
        values, counts = np.unique(aggs, return_counts=True)
        hist = {int(v): int(c) for v, c in zip(values, counts)}
    occupancy = None
    starvation = None
    if tracker.active_ns > 0:
        occupancy = [t / tracker.active_ns for t in tracker.occ_ns]
        starvation = tracker.starved_ns / tracker.active_ns
    mean_qlen = tracker.qlen_integral / window_ns if window_ns > 0 else 0.0
    return BssReport(
        bss=tracker.bss,
        arrivals=tracker.arrivals,
        delivered=int(aggs.sum()) if have_aggs else 0,
        delay_samples_ns=delays if keep_samples else None,
        delay_p50_us=float(_percentile_sorted(delays, 50)) / NS_PER_US if have_delays else None,
        delay_p95_us=float(_percentile_sorted(delays, 95)) / NS_PER_US if have_delays else None,
        delay_p99_us=float(_percentile_sorted(delays, 99)) / NS_PER_US if have_delays else None,
        delay_mean_us=float(delays.mean()) / NS_PER_US if have_delays else None,
        throughput_bps=tracker.delivered_bits / window_s if window_s > 0 else 0.0,
        agg_p50=int(_percentile_sorted(aggs, 50)) if have_aggs else None,
        agg_p99=int(_percentile_sorted(aggs, 99)) if have_aggs else None,
        agg_hist=hist,
        occupancy=occupancy,
        starvation_frac=starvation,
        drops_queue=tracker.drops_queue,
        drops_retry=tracker.drops_retry,
        mean_queue_len=mean_qlen,
        mean_queue_wait_us=(tracker.wait_sum_ns / tracker.wait_count / NS_PER_US)
        if tracker.wait_count
        else None,
        arrival_rate_pps=tracker.arrivals_postwarmup / window_s if window_s > 0 else 0.0,
        saturated=mean_qlen > 0.5 * tracker.queue_capacity,
    )


def pooled_samples_ns(reports: list, bss=None) -> np.ndarray:
    """Pool raw delay samples across reports (e.g. seed replicates).

    bss selects a single BSS id; None pools every BSS. Reports must have been
    produced with keep_samples=True.
    """
    parts = []
    for report in reports:
        for br in report.bss_reports:
            if bss is not None and br.bss != bss:
                continue
            if br.delay_samples_ns is None:
                raise ValueError("report lacks raw samples; rerun with keep_samples=True")
            parts.append(br.delay_samples_ns)
    if not parts:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(parts)


def pooled_delay_percentile_us(reports: list, p: float, bss=None) -> Optional[float]:
    samples = pooled_samples_ns(reports, bss=bss)
    if len(samples) == 0:
        return None
    return float(percentile(samples, p)) / NS_PER_US


def pooled_agg_percentile(reports: list, p: float, bss=None) -> Optional[int]:
    """Pool aggregation histograms across reports and take a percentile."""
    sizes: list[int] = []
    for report in reports:
        for br in report.bss_reports:
            if bss is not None and br.bss != bss:
                continue
            for size, count in br.agg_hist.items():
                sizes.extend([size] * count)
    if not sizes:
        return None
    return int(percentile(np.asarray(sizes, dtype=np.int64), p))
