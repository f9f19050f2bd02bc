"""Orthogonal broadcast channels with perfect carrier sense.

Every device is in range of every other, so all links subscribed to a channel
share one busy/idle view. Zero propagation delay means overlap can only arise
from transmissions starting at the same instant (same backoff slot); any
overlap marks every party as collided, with no capture effect.
"""

from __future__ import annotations

SUCCESS = "success"
COLLISION = "collision"


class Transmission:
    """One device's occupancy of one channel for a fixed duration."""

    __slots__ = ("channel_id", "owner", "start_ns", "duration_ns", "end_ns", "collided")

    def __init__(self, channel_id: int, owner: int, start_ns: int, duration_ns: int):
        self.channel_id = channel_id
        self.owner = owner
        self.start_ns = start_ns
        self.duration_ns = duration_ns
        self.end_ns = start_ns + duration_ns
        self.collided = False


class Channel:
    """A single orthogonal channel; transmissions on different channels never
    interact.

    Links subscribe for busy/idle edge notifications (strictly alternating);
    watchers are called on every occupancy change and are used by metrics.
    """

    __slots__ = (
        "id",
        "sim",
        "mark_collisions",
        "active",
        "_listeners",
        "_watchers",
        "_busy_since",
        "busy_ns",
        "trace",
    )

    def __init__(self, sim, channel_id: int, mark_collisions: bool = True, trace: bool = False):
        self.id = channel_id
        self.sim = sim
        self.mark_collisions = mark_collisions
        self.active: list[Transmission] = []
        self._listeners: list = []
        self._watchers: list = []
        self._busy_since = 0
        self.busy_ns = 0
        self.trace: list[tuple] | None = [] if trace else None

    def subscribe(self, link) -> None:
        self._listeners.append(link)

    def watch(self, callback) -> None:
        self._watchers.append(callback)

    def is_busy(self) -> bool:
        return bool(self.active)

    def foreign_busy(self, owner: int) -> bool:
        """True iff some other device currently holds this channel."""
        for tx in self.active:
            if tx.owner != owner:
                return True
        return False

    def begin_tx(self, owner: int, duration_ns: int) -> Transmission:
        """Occupy the channel for [now, now + duration).

        Any concurrent transmission (including one starting this same instant)
        marks all parties collided.
        """
        now = self.sim._now
        tx = Transmission(self.id, owner, now, duration_ns)
        active = self.active
        if active and self.mark_collisions:
            # Occupancy is half-open [start, end): a transmission ending at
            # this very instant (its end event still pending) does not overlap.
            for other in active:
                if other.end_ns > now:
                    other.collided = True
                    tx.collided = True
        was_idle = not active
        active.append(tx)
        if was_idle:
            self._busy_since = now
            for link in self._listeners:
                link.on_channel_busy()
        for cb in self._watchers:
            cb()
        return tx

    def end_tx(self, tx: Transmission) -> str:
        """Release occupancy; idle is notified once the last overlap ends."""
        self.active.remove(tx)
        outcome = COLLISION if tx.collided else SUCCESS
        if self.trace is not None:
            self.trace.append((tx.owner, tx.start_ns, tx.end_ns, outcome))
        if not self.active:
            self.busy_ns += self.sim._now - self._busy_since
            for link in self._listeners:
                link.on_channel_idle()
        for cb in self._watchers:
            cb()
        return outcome
