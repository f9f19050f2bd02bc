"""Per-link DCF contention state machine.

DIFS sensing and the slotted backoff are folded into one scheduled access
event; when the channel turns busy mid-countdown the event is cancelled and
the number of fully elapsed idle slots is subtracted, which reproduces the
standard freeze/resume rule without per-slot events. An access event that
would fire at the very instant a foreign transmission starts is left in place:
both stations finished their backoff in the same slot and must collide.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .medium import SUCCESS


def _is_pow2(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class DcfParams:
    slot_ns: int = 9_000
    sifs_ns: int = 16_000
    difs_ns: int = 34_000  # sifs + 2 slots
    cw_min: int = 16
    cw_max: int = 1_024
    retry_limit: int = 7

    def __post_init__(self) -> None:
        if min(self.slot_ns, self.sifs_ns, self.difs_ns) <= 0:
            raise ValueError("DCF timings must be strictly positive")
        if self.difs_ns < self.sifs_ns:
            raise ValueError("difs_ns must be >= sifs_ns")
        if not (_is_pow2(self.cw_min) and _is_pow2(self.cw_max)):
            raise ValueError("contention windows must be powers of two")
        if self.cw_min > self.cw_max:
            raise ValueError("cw_min must be <= cw_max")
        if self.retry_limit < 0:
            raise ValueError("retry_limit must be >= 0")


class Phase(Enum):
    IDLE = "idle"
    CONTEND = "contend"  # DIFS wait + backoff countdown
    FROZEN = "frozen"
    TX = "tx"
    LOCKED = "locked"  # EMLSR: sibling radio transmitting


# Outcomes reported to the MLD when a transmission attempt finishes.
TX_SUCCESS = "success"
TX_RETRY = "retry"
TX_DROPPED = "dropped"


class DcfLink:
    """One radio's contention state on one channel, owned by an Mld.

    All transitions run inside kernel event dispatch; the link holds at most
    one pending access event at a time.
    """

    __slots__ = (
        "sim",
        "params",
        "channel",
        "mld",
        "index",
        "rng",
        "phase",
        "backoff_slots",
        "retry_stage",
        "difs_end_ns",
        "batch",
        "_access_ev",
        "_tx",
        "_had_contention",
        "slots_counted",
    )

    def __init__(self, sim, params: DcfParams, channel, mld, index: int, rng):
        self.sim = sim
        self.params = params
        self.channel = channel
        self.mld = mld
        self.index = index
        self.rng = rng
        self.phase = Phase.IDLE
        self.backoff_slots = 0
        self.retry_stage = 0
        self.difs_end_ns = 0
        self.batch = None  # aggregate retained across retries
        self._access_ev = None
        self._tx = None
        self._had_contention = False
        self.slots_counted = 0  # lifetime idle slots consumed (test hook)
        channel.subscribe(self)

    def cw(self) -> int:
        return min(self.params.cw_min << self.retry_stage, self.params.cw_max)

    # -- contention ------------------------------------------------------

    def arm(self) -> None:
        """Start contention for queued traffic; no-op unless idle."""
        if self.phase is not Phase.IDLE:
            return
        self.backoff_slots = int(self.rng.integers(0, self.cw()))
        self._enter_contention()

    def _enter_contention(self) -> None:
        if self.channel.is_busy():
            self.phase = Phase.FROZEN
        else:
            self._start_difs()

    def _start_difs(self) -> None:
        p = self.params
        self.phase = Phase.CONTEND
        self.difs_end_ns = self.sim._now + p.difs_ns
        self._access_ev = self.sim.schedule(
            self.difs_end_ns + self.backoff_slots * p.slot_ns, self._on_access
        )

    def on_channel_busy(self) -> None:
        if self.phase is not Phase.CONTEND:
            return
        now = self.sim._now
        if self._access_ev[0] == now:
            # Backoff expires this very instant: transmit and collide.
            return
        self.sim.cancel(self._access_ev)
        self._access_ev = None
        if now > self.difs_end_ns:
            elapsed = (now - self.difs_end_ns) // self.params.slot_ns
            self.backoff_slots -= elapsed
            self.slots_counted += elapsed
        # Busy during DIFS leaves the counter untouched; DIFS restarts on idle.
        self.phase = Phase.FROZEN

    def on_channel_idle(self) -> None:
        if self.phase is Phase.FROZEN:
            self._start_difs()

    def _on_access(self) -> None:
        self._access_ev = None
        self.slots_counted += self.backoff_slots
        self.backoff_slots = 0
        channel = self.channel
        if not channel.mark_collisions and channel.active:
            # Collision modeling off: a same-slot loser senses the winner
            # sequentially and defers (resumes with DIFS once idle).
            now = self.sim._now
            if any(tx.end_ns > now for tx in channel.active):
                self.phase = Phase.FROZEN
                return
        batch = self.batch
        if batch is None:
            batch = self.mld.claim_batch(self)
            if batch is None:  # queue drained meanwhile: grant declined
                self.phase = Phase.IDLE
                return
            self.batch = batch
        self._transmit(batch)

    # -- transmission ------------------------------------------------------

    def _transmit(self, batch) -> None:
        self.phase = Phase.TX
        duration = self.mld.exchange_ns(len(batch))
        self.mld.on_tx_start(self)
        self._tx = self.channel.begin_tx(self.mld.bss, duration)
        self.sim.schedule(self.sim._now + duration, self._on_tx_end)

    def _on_tx_end(self) -> None:
        outcome = self.channel.end_tx(self._tx)
        self._tx = None
        batch = self.batch
        if outcome == SUCCESS:
            self.batch = None
            self.retry_stage = 0
            self.mld.on_tx_finished(self, batch, TX_SUCCESS)
        else:
            self.retry_stage += 1
            if self.retry_stage > self.params.retry_limit:
                self.batch = None
                self.retry_stage = 0
                self.mld.on_tx_finished(self, batch, TX_DROPPED)
            else:
                self.mld.on_tx_finished(self, batch, TX_RETRY)
        # Continue: retry the kept aggregate, serve more queue, or go idle.
        if self.phase is Phase.TX:  # an EMLSR unlock may already have re-armed us
            if self.batch is not None or self.mld.has_traffic():
                self.backoff_slots = int(self.rng.integers(0, self.cw()))
                self._enter_contention()
            else:
                self.phase = Phase.IDLE

    # -- EMLSR lock ------------------------------------------------------

    def lock(self) -> None:
        """Sibling radio is transmitting: suspend contention, keep the count."""
        phase = self.phase
        if phase is Phase.CONTEND:
            self.sim.cancel(self._access_ev)
            self._access_ev = None
            now = self.sim._now
            if now > self.difs_end_ns:
                elapsed = (now - self.difs_end_ns) // self.params.slot_ns
                self.backoff_slots -= elapsed
                self.slots_counted += elapsed
            self._had_contention = True
        elif phase is Phase.FROZEN:
            self._had_contention = True
        elif phase is Phase.IDLE:
            self._had_contention = False
        else:
            raise AssertionError("EMLSR lock on a transmitting link")
        self.phase = Phase.LOCKED

    def unlock(self) -> None:
        if self.phase is not Phase.LOCKED:
            return
        if self._had_contention:
            self._enter_contention()
        else:
            self.phase = Phase.IDLE
