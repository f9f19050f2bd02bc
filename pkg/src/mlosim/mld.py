"""Multi-link device logic: one shared FIFO feeding per-link DCF contention.

Mode differences are deliberately thin. SL is the one-link special case,
STR EMLMR and the hybrid reserved+shared arrangement run all links fully
concurrently, and EMLSR adds a single-radio transmit lock that freezes every
sibling link for the duration of a transmission (plus an optional switch
delay). Aggregates are formed at grant time, never re-split, and retried
whole after a collision.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .dcf import DcfLink, DcfParams, TX_DROPPED, TX_SUCCESS
from .phy import AckParams, PhyConfig, exchange_airtime_ns, max_mpdus_within


class Mode(Enum):
    SL = "SL"
    EMLSR = "EMLSR"
    STR_EMLMR = "STR_EMLMR"
    HYBRID_1P1 = "HYBRID_1P1"  # reserved channel + shared channel, STR behavior


class Packet:
    __slots__ = ("id", "bss", "arrival_ns", "size_bytes", "formed_ns")

    def __init__(self, pkt_id: int, bss: int, arrival_ns: int, size_bytes: int):
        self.id = pkt_id
        self.bss = bss
        self.arrival_ns = arrival_ns
        self.size_bytes = size_bytes
        self.formed_ns = -1  # set when the packet joins an aggregate


@dataclass(frozen=True)
class MldConfig:
    mode: Mode
    links: tuple[tuple[int, int], ...]  # (radio index, channel id), ordered
    max_aggregation: int = 1024
    emlsr_switch_delay_ns: int = 0

    def validate(self, path: str = "mld") -> list[str]:
        errors = []
        channels = [ch for _, ch in self.links]
        if self.max_aggregation < 1:
            errors.append(f"{path}.max_aggregation must be >= 1")
        if self.emlsr_switch_delay_ns < 0:
            errors.append(f"{path}.emlsr_switch_delay_ns must be >= 0")
        if not self.links:
            errors.append(f"{path}.links must not be empty")
            return errors
        if len(set(channels)) != len(channels):
            errors.append(f"{path}.links must use distinct channels")
        if self.mode is Mode.SL and len(self.links) != 1:
            errors.append(f"{path}: SL requires exactly 1 link, got {len(self.links)}")
        if self.mode is Mode.EMLSR and len(self.links) < 2:
            errors.append(f"{path}: EMLSR requires at least 2 links")
        if self.mode is Mode.HYBRID_1P1 and len(self.links) != 2:
            errors.append(f"{path}: HYBRID_1P1 requires exactly 2 links (reserved first)")
        return errors

    @property
    def scheme(self) -> str:
        k = len(self.links)
        if self.mode is Mode.SL:
            return "SL"
        if self.mode is Mode.EMLSR:
            return f"EMLSR:{k}"
        if self.mode is Mode.HYBRID_1P1:
            return "STR EMLMR:1+1"
        return f"STR EMLMR:{k}"


class Mld:
    """One BSS's transmitter: shared queue, aggregation, link arbitration."""

    __slots__ = (
        "sim",
        "bss",
        "config",
        "queue",
        "capacity",
        "agg_cap",
        "packet_size",
        "links",
        "emlsr",
        "tracker",
        "_locked_by",
        "_unlock_ev",
        "_phy",
        "_ack",
        "delivered_total",
        "dropped_retry_pkts",
    )

    def __init__(
        self,
        sim,
        bss: int,
        config: MldConfig,
        channels: dict,
        phy: PhyConfig,
        ack: AckParams,
        dcf: DcfParams,
        packet_size: int,
        queue_capacity: int,
        tracker,
        link_rngs,
    ):
        self.sim = sim
        self.bss = bss
        self.config = config
        self.queue: deque[Packet] = deque()
        self.capacity = queue_capacity
        self.packet_size = packet_size
        self._phy = phy
        self._ack = ack
        self.agg_cap = config.max_aggregation
        if phy.max_ppdu_ns is not None:
            self.agg_cap = min(self.agg_cap, max_mpdus_within(phy, packet_size, phy.max_ppdu_ns))
        self.links = [
            DcfLink(sim, dcf, channels[ch], self, idx, link_rngs[idx])
            for idx, (_radio, ch) in enumerate(config.links)
        ]
        self.emlsr = config.mode is Mode.EMLSR
        self.tracker = tracker
        self._locked_by = None
        self._unlock_ev = None
        self.delivered_total = 0
        self.dropped_retry_pkts = 0

    # -- queue ------------------------------------------------------------

    def enqueue(self, pkt: Packet) -> bool:
        queue = self.queue
        if len(queue) >= self.capacity:
            self.tracker.on_queue_drop()
            return False
        queue.append(pkt)
        self.tracker.on_queue_len(len(queue))
        self.arm_links()
        return True

    def arm_links(self) -> None:
        if self._locked_by is not None:  # EMLSR radio is busy transmitting
            return
        for link in self.links:
            link.arm()

    def has_traffic(self) -> bool:
        return bool(self.queue)

    def exchange_ns(self, n_mpdus: int) -> int:
        return exchange_airtime_ns(self._phy, self._ack, n_mpdus, self.packet_size)

    # -- grants and transmissions ------------------------------------------

    def claim_batch(self, link: DcfLink):
        """Dequeue up to the aggregation cap; None declines the grant."""
        queue = self.queue
        if not queue:
            return None
        if self.emlsr:
            assert self._locked_by is None, "EMLSR grant while sibling transmits"
        n = len(queue)
        if n > self.agg_cap:
            n = self.agg_cap
        now = self.sim._now
        popleft = queue.popleft
        batch = [popleft() for _ in range(n)]
        for pkt in batch:
            pkt.formed_ns = now
        self.tracker.on_queue_len(len(queue))
        return batch

    def on_tx_start(self, link: DcfLink) -> None:
        self.tracker.on_ntx(+1)
        if self.emlsr:
            if self._unlock_ev is not None:
                self.sim.cancel(self._unlock_ev)
                self._unlock_ev = None
            self._locked_by = link
            for sibling in self.links:
                if sibling is not link:
                    sibling.lock()

    def on_tx_finished(self, link: DcfLink, batch: list[Packet], outcome: str) -> None:
        self.tracker.on_ntx(-1)
        if outcome == TX_SUCCESS:
            self.delivered_total += len(batch)
            self.tracker.record_delivery(batch, self.sim._now)
        elif outcome == TX_DROPPED:
            self.dropped_retry_pkts += len(batch)
            self.tracker.on_retry_drop(len(batch))
        if self.emlsr and self._locked_by is link:
            delay = self.config.emlsr_switch_delay_ns
            if delay == 0:
                self._release_lock()
            else:
                self._unlock_ev = self.sim.schedule_in(delay, self._release_lock)

    def _release_lock(self) -> None:
        self._unlock_ev = None
        self._locked_by = None
        for link in self.links:
            link.unlock()
        self.arm_links()

    # -- accounting ------------------------------------------------------

    def in_flight_packets(self) -> int:
        return sum(len(link.batch) for link in self.links if link.batch is not None)
