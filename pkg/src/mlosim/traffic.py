"""Per-BSS downlink Poisson packet source.

Inter-arrival gaps are drawn by inverse transform from the source's own
stream, so the arrival pattern is reproducible independently of MAC events.
"""

from __future__ import annotations

import math

from .mld import Mld, Packet


class PoissonSource:
    __slots__ = ("sim", "rng", "mld", "bss", "packet_size", "rate_pps", "_next_id", "arrivals")

    def __init__(self, sim, rng, mld: Mld, bss: int, load_bps: float, packet_size: int):
        self.sim = sim
        self.rng = rng
        self.mld = mld
        self.bss = bss
        self.packet_size = packet_size
        self.rate_pps = load_bps / (packet_size * 8)
        self._next_id = 0
        self.arrivals = 0

    def start(self, t0_ns: int = 0) -> None:
        """Schedule the first arrival; each arrival schedules the next."""
        if self.rate_pps <= 0.0:
            return
        self.sim.schedule(t0_ns + self._gap_ns(), self._on_arrival)

    def _gap_ns(self) -> int:
        u = self.rng.random()
        gap = -math.log1p(-u) / self.rate_pps
        return max(1, int(gap * 1e9))

    def _on_arrival(self) -> None:
        now = self.sim._now
        pkt = Packet(self._next_id, self.bss, now, self.packet_size)
        self._next_id += 1
        self.arrivals += 1
        self.mld.tracker.on_arrival(now)
        self.mld.enqueue(pkt)
        self.sim.schedule(now + self._gap_ns(), self._on_arrival)


def split_evenly(total_load_bps: float, n_bss: int) -> list[float]:
    """Spread a total offered load evenly over n BSSs."""
    if n_bss < 1:
        raise ValueError("n_bss must be >= 1")
    return [total_load_bps / n_bss] * n_bss
