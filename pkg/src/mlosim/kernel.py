"""Deterministic discrete-event core: integer-nanosecond clock, ordered event
queue, and reproducible per-entity random streams.

All protocol constants (9 us slot, 16 us SIFS, ...) are exact integers in
nanoseconds, so there is no floating-point clock drift anywhere in a run.
"""

from __future__ import annotations

import heapq
from typing import Any, Callable

import numpy as np

NS_PER_US = 1_000
NS_PER_MS = 1_000_000
NS_PER_S = 1_000_000_000


class SchedulingError(RuntimeError):
    """Scheduling an event in the past is a programming error; halt the run."""


class Simulator:
    """Event queue with a monotone clock.

    Events fire in (time, insertion order); the insertion-order tie-break makes
    simultaneous backoff expiries deterministic. A Simulator instance is a
    self-contained single-threaded run; concurrency across runs is achieved by
    running independent instances.
    """

    __slots__ = ("_heap", "_seq", "_now", "scheduled", "cancelled", "processed")

    def __init__(self) -> None:
        self._heap: list[list] = []
        self._seq = 0
        self._now = 0
        self.scheduled = 0
        self.cancelled = 0
        self.processed = 0

    @property
    def now(self) -> int:
        return self._now

    def schedule(self, at_ns: int, callback: Callable, arg: Any = None) -> list:
        """Schedule callback(arg) (or callback() if arg is None) at at_ns.

        Returns a handle usable with cancel().
        """
        if at_ns < self._now:
            raise SchedulingError(
                f"event scheduled at t={at_ns} ns, before now={self._now} ns"
            )
        entry = [at_ns, self._seq, callback, arg]
        self._seq += 1
        self.scheduled += 1
        heapq.heappush(self._heap, entry)
        return entry

    def schedule_in(self, delay_ns: int, callback: Callable, arg: Any = None) -> list:
        return self.schedule(self._now + delay_ns, callback, arg)

    def cancel(self, handle: list) -> bool:
        """True iff the event had not yet fired; cancelled events never run.

        Idempotent: cancelling twice (or after firing) returns False.
        """
        if handle[2] is None:
            return False
        handle[2] = None
        handle[3] = None
        self.cancelled += 1
        return True

    @property
    def pending(self) -> int:
        return sum(1 for e in self._heap if e[2] is not None)

    def run_until(self, t_end_ns: int) -> int:
        """Dispatch every event with fire time <= t_end_ns; clock ends at t_end_ns.

        Events scheduled during dispatch are processed in the same pass when
        they fall inside the window. Returns the number of events dispatched.
        """
        if t_end_ns < self._now:
            raise SchedulingError(
                f"run_until target t={t_end_ns} ns is before now={self._now} ns"
            )
        heap = self._heap
        pop = heapq.heappop
        n = 0
        while heap and heap[0][0] <= t_end_ns:
            entry = pop(heap)
            callback = entry[2]
            if callback is None:  # lazily-deleted cancelled event
                continue
            entry[2] = None
            arg = entry[3]
            self._now = entry[0]
            n += 1
            if arg is None:
                callback()
            else:
                callback(arg)
        self._now = t_end_ns
        self.processed += n
        return n


def rng_stream(seed: int, *key: int) -> np.random.Generator:
    """Independent random stream for one stochastic entity.

    Identical (seed, key) yields an identical draw sequence on every platform,
    and distinct keys give statistically independent streams, so adding an
    entity never perturbs another entity's draws.
    """
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=key))
    )


# Stream-key kinds, fixed so that configurations extend without reshuffling.
STREAM_TRAFFIC = 0
STREAM_DCF = 1
