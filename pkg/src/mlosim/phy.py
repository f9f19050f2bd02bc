"""PHY rate and on-air duration arithmetic for PPDUs and their ack exchange.

Pure functions over immutable configuration; defaults model an 80 MHz channel,
two spatial streams, 256-QAM rate 3/4 (6 information bits per subcarrier per
symbol, 980 data subcarriers, 12.8 us symbols with 0.8 us guard).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PhyConfig:
    channel_width_mhz: int = 80
    spatial_streams: int = 2
    bits_per_subcarrier: int = 6
    data_subcarriers: int = 980
    symbol_ns: int = 13_600
    preamble_ns: int = 40_000
    per_mpdu_overhead_bytes: int = 0
    # Optional PPDU duration cap. None (default) leaves aggregates uncapped:
    # worst-case aggregate counts imply airtimes past the usual 5.484 ms limit.
    max_ppdu_ns: int | None = None

    def __post_init__(self) -> None:
        for name in (
            "channel_width_mhz",
            "spatial_streams",
            "bits_per_subcarrier",
            "data_subcarriers",
            "symbol_ns",
            "preamble_ns",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"PhyConfig.{name} must be strictly positive")
        if self.per_mpdu_overhead_bytes < 0:
            raise ValueError("PhyConfig.per_mpdu_overhead_bytes must be >= 0")
        if self.max_ppdu_ns is not None and self.max_ppdu_ns <= self.preamble_ns:
            raise ValueError("PhyConfig.max_ppdu_ns must exceed the preamble")

    @property
    def bits_per_symbol(self) -> int:
        return self.data_subcarriers * self.bits_per_subcarrier * self.spatial_streams


@dataclass(frozen=True)
class AckParams:
    """Fixed-duration model of the SIFS + block-ack tail of an exchange.

    Zero values are accepted for sensitivity checks (ack modeling off).
    """

    sifs_ns: int = 16_000
    block_ack_ns: int = 28_000

    def __post_init__(self) -> None:
        if self.sifs_ns < 0 or self.block_ack_ns < 0:
            raise ValueError("AckParams durations must be >= 0")


def data_rate_bps(phy: PhyConfig) -> float:
    """Sustained rate over the data portion of a PPDU, in bits per second."""
    return phy.bits_per_symbol * 1e9 / phy.symbol_ns


def ppdu_airtime_ns(phy: PhyConfig, n_mpdus: int, mpdu_payload_bytes: int) -> int:
    """Preamble plus symbol-quantized payload time for an aggregate PPDU."""
    if n_mpdus < 1:
        raise ValueError("a PPDU must carry at least one MPDU")
    if mpdu_payload_bytes <= 0:
        raise ValueError("mpdu_payload_bytes must be strictly positive")
    bits = n_mpdus * (mpdu_payload_bytes + phy.per_mpdu_overhead_bytes) * 8
    bps = phy.bits_per_symbol
    symbols = -(-bits // bps)
    return phy.preamble_ns + symbols * phy.symbol_ns


def exchange_airtime_ns(
    phy: PhyConfig, ack: AckParams, n_mpdus: int, mpdu_payload_bytes: int
) -> int:
    """Total channel-holding time: PPDU, then SIFS, then the block ack."""
    return ppdu_airtime_ns(phy, n_mpdus, mpdu_payload_bytes) + ack.sifs_ns + ack.block_ack_ns


def max_mpdus_within(phy: PhyConfig, mpdu_payload_bytes: int, cap_ns: int) -> int:
    """Largest aggregate whose PPDU fits cap_ns; at least 1 so a lone MPDU
    always remains sendable."""
    mpdu_bits = (mpdu_payload_bytes + phy.per_mpdu_overhead_bytes) * 8
    budget_symbols = (cap_ns - phy.preamble_ns) // phy.symbol_ns
    n = (budget_symbols * phy.bits_per_symbol) // mpdu_bits
    return max(1, int(n))
