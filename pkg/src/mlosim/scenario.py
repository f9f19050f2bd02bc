"""Scenario configuration: validation, YAML round-trip, and load resolution.

A scenario file is plain YAML (nested key/value sections) mirroring the
Scenario dataclass one-to-one, so parse -> serialize -> parse is the identity.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from typing import Optional

import yaml

from .dcf import DcfParams
from .kernel import NS_PER_S
from .mld import MldConfig, Mode
from .phy import AckParams, PhyConfig
from .traffic import split_evenly


class ScenarioError(ValueError):
    """Raised before any event runs when a scenario is malformed."""

    def __init__(self, errors: list[str]):
        self.errors = errors
        super().__init__("invalid scenario:\n  " + "\n  ".join(errors))


@dataclass(frozen=True)
class BssSpec:
    mld: MldConfig
    load_bps: Optional[float] = None


@dataclass(frozen=True)
class Scenario:
    name: str
    channels: tuple[int, ...]
    bss: tuple[BssSpec, ...]
    phy: PhyConfig = PhyConfig()
    ack: AckParams = AckParams()
    dcf: DcfParams = DcfParams()
    packet_size_bytes: int = 12_000
    queue_capacity: int = 4_096
    duration_ns: int = 30 * NS_PER_S
    warmup_frac: float = 0.1
    total_load_bps: Optional[float] = None
    even_split: bool = True
    collisions: bool = True

    # -- validation --------------------------------------------------------

    def validate(self) -> list[str]:
        errors: list[str] = []
        if not self.channels:
            errors.append("channels: at least one channel required")
        if len(set(self.channels)) != len(self.channels):
            errors.append("channels: ids must be unique")
        if not self.bss:
            errors.append("bss: at least one BSS required")
        if self.packet_size_bytes <= 0:
            errors.append("packet_size_bytes must be > 0")
        if self.queue_capacity < 1:
            errors.append("queue_capacity must be >= 1")
        if self.duration_ns <= 0:
            errors.append("duration_ns must be > 0")
        if not 0.0 <= self.warmup_frac < 1.0:
            errors.append("warmup_frac must lie in [0, 1)")
        if self.total_load_bps is not None and not self.even_split:
            errors.append("total_load_bps requires even_split=true")
        known = set(self.channels)
        reserved_seen: dict[int, int] = {}
        for i, spec in enumerate(self.bss):
            path = f"bss[{i}]"
            errors.extend(spec.mld.validate(path=f"{path}.mld"))
            for j, (_radio, ch) in enumerate(spec.mld.links):
                if ch not in known:
                    errors.append(f"{path}.mld.links[{j}]: unknown channel {ch}")
            if spec.load_bps is None and self.total_load_bps is None:
                errors.append(f"{path}.load_bps: no load given and no total_load_bps set")
            if spec.load_bps is not None and spec.load_bps < 0:
                errors.append(f"{path}.load_bps must be >= 0")
            if spec.mld.mode is Mode.HYBRID_1P1 and spec.mld.links:
                rch = spec.mld.links[0][1]
                if rch in reserved_seen:
                    errors.append(
                        f"{path}.mld.links[0]: reserved channel {rch} already "
                        f"reserved by bss[{reserved_seen[rch]}]"
                    )
                reserved_seen[rch] = i
        # A reserved channel must not appear in any other BSS's link map.
        for rch, owner in reserved_seen.items():
            for i, spec in enumerate(self.bss):
                if i == owner:
                    continue
                if any(ch == rch for _r, ch in spec.mld.links):
                    errors.append(
                        f"bss[{i}]: uses channel {rch} reserved by bss[{owner}]"
                    )
        return errors

    def validated(self) -> "Scenario":
        errors = self.validate()
        if errors:
            raise ScenarioError(errors)
        return self

    # -- derived values ------------------------------------------------------

    def resolved_loads(self) -> list[float]:
        """Per-BSS offered loads in bits/s."""
        if self.total_load_bps is not None:
            return split_evenly(self.total_load_bps, len(self.bss))
        return [spec.load_bps for spec in self.bss]

    @property
    def warmup_ns(self) -> int:
        return int(self.duration_ns * self.warmup_frac)

    def with_total_load(self, total_load_bps: float) -> "Scenario":
        return replace(self, total_load_bps=total_load_bps)

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "channels": list(self.channels),
            "bss": [
                {
                    "mode": spec.mld.mode.value,
                    "links": [list(pair) for pair in spec.mld.links],
                    "max_aggregation": spec.mld.max_aggregation,
                    "emlsr_switch_delay_ns": spec.mld.emlsr_switch_delay_ns,
                    "load_bps": spec.load_bps,
                }
                for spec in self.bss
            ],
            "phy": asdict(self.phy),
            "ack": asdict(self.ack),
            "dcf": asdict(self.dcf),
            "packet_size_bytes": self.packet_size_bytes,
            "queue_capacity": self.queue_capacity,
            "duration_ns": self.duration_ns,
            "warmup_frac": self.warmup_frac,
            "total_load_bps": self.total_load_bps,
            "even_split": self.even_split,
            "collisions": self.collisions,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        try:
            bss = tuple(
                BssSpec(
                    mld=MldConfig(
                        mode=Mode(entry["mode"]),
                        links=tuple((int(r), int(c)) for r, c in entry["links"]),
                        max_aggregation=int(entry.get("max_aggregation", 1024)),
                        emlsr_switch_delay_ns=int(entry.get("emlsr_switch_delay_ns", 0)),
                    ),
                    load_bps=entry.get("load_bps"),
                )
                for entry in data["bss"]
            )
            return cls(
                name=data["name"],
                channels=tuple(int(c) for c in data["channels"]),
                bss=bss,
                phy=PhyConfig(**data.get("phy", {})),
                ack=AckParams(**data.get("ack", {})),
                dcf=DcfParams(**data.get("dcf", {})),
                packet_size_bytes=int(data.get("packet_size_bytes", 12_000)),
                queue_capacity=int(data.get("queue_capacity", 4_096)),
                duration_ns=int(data.get("duration_ns", 30 * NS_PER_S)),
                warmup_frac=float(data.get("warmup_frac", 0.1)),
                total_load_bps=data.get("total_load_bps"),
                even_split=bool(data.get("even_split", True)),
                collisions=bool(data.get("collisions", True)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError([f"cannot parse scenario: {exc!r}"]) from exc


def load_scenario(path: str) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh)
    if not isinstance(data, dict):
        raise ScenarioError([f"{path}: expected a mapping at top level"])
    return Scenario.from_dict(data)


def save_scenario(scenario: Scenario, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        yaml.safe_dump(scenario.to_dict(), fh, sort_keys=False)
