import math

import pytest

from mlosim.kernel import Simulator, rng_stream
from mlosim.traffic import PoissonSource, split_evenly


class CountingMld:
    """Sink that only counts arrivals."""

    class _Tracker:
        def __init__(self):
            self.n = 0

        def on_arrival(self, now):
            self.n += 1

    def __init__(self):
        self.tracker = self._Tracker()

    def enqueue(self, pkt):
        return True


def test_rate_from_load():
    src = PoissonSource(Simulator(), rng_stream(1, 0, 0), CountingMld(), 0, 0.5e9, 12_000)
    assert src.rate_pps == pytest.approx(5_208.3333333)
    assert src.rate_pps == pytest.approx(0.5e9 / 96_000)


def test_zero_load_never_fires():
    sim = Simulator()
    mld = CountingMld()
    src = PoissonSource(sim, rng_stream(1, 0, 0), mld, 0, 0.0, 12_000)
    src.start(0)
    sim.run_until(10_000_000_000)
    assert mld.tracker.n == 0
    assert sim.scheduled == 0


def test_empirical_mean_gap_matches_exponential_oracle():
    # 10^6 inverse-transform draws; mean within 1% of 1/rate.
    src = PoissonSource(Simulator(), rng_stream(7, 0, 0), CountingMld(), 0, 0.5e9, 12_000)
    n = 1_000_000
    total = sum(src._gap_ns() for _ in range(n))
    mean_s = total / n / 1e9
    assert mean_s == pytest.approx(1.0 / src.rate_pps, rel=0.01)


def test_arrival_count_concentrates_at_rate_times_t():
    sim = Simulator()
    mld = CountingMld()
    load = 0.1e9
    src = PoissonSource(sim, rng_stream(3, 0, 0), mld, 0, load, 12_000)
    src.start(0)
    horizon_s = 20
    sim.run_until(horizon_s * 1_000_000_000)
    expected = src.rate_pps * horizon_s
    assert abs(mld.tracker.n - expected) < 3 * math.sqrt(expected)


def test_sources_with_distinct_streams_are_independent():
    gaps = []
    for bss in (0, 1):
        src = PoissonSource(Simulator(), rng_stream(5, 0, bss), CountingMld(), bss, 1e9, 12_000)
        gaps.append([src._gap_ns() for _ in range(100)])
    assert gaps[0] != gaps[1]


def test_split_evenly_quarters():
    loads = split_evenly(2.5e9, 4)
    assert loads == [0.625e9] * 4
    assert sum(loads) == 2.5e9


def test_split_evenly_identity_and_conservation():
    assert split_evenly(1.23e9, 1) == [1.23e9]
    for n in (2, 3, 5, 7):
        parts = split_evenly(1e9, n)
        assert sum(parts) == pytest.approx(1e9, rel=1e-12)
    with pytest.raises(ValueError):
        split_evenly(1e9, 0)
