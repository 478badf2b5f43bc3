"""Config file loading: a TOML (or JSON) file with optional tables

    [scenario] [channel] [channel.sh] [channel.dh] [phy] [mac] [traffic] [energy]

Any omitted key falls back to the documented default; unknown keys are
rejected. CLI flags override file values.
"""

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib  # py311+
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

from .channel import ChannelParams, VariantParams
from .energy import PowerModelParams
from .errors import ConfigError
from .mac import MacConfig, SlotClock
from .phy import PhyConfig
from .scenario import Scenario
from .traffic import SourceConfig


@dataclass(frozen=True)
class SimConfig:
    """Everything a run needs, minus the device profile."""

    scenario: Scenario = field(default_factory=Scenario)
    channel: ChannelParams = field(default_factory=ChannelParams)
    phy: PhyConfig = field(default_factory=PhyConfig)
    mac: MacConfig = field(default_factory=MacConfig)
    traffic: SourceConfig = field(default_factory=SourceConfig)
    energy: PowerModelParams = field(default_factory=PowerModelParams)
    clock: SlotClock = field(default_factory=SlotClock)


def _build(cls, table: dict, where: str):
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = set(table) - names
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)} in [{where}]")
    coerced = {}
    for key, value in table.items():
        if isinstance(value, list):
            value = tuple(value)
        coerced[key] = value
    try:
        return cls(**coerced)
    except TypeError as exc:
        raise ConfigError(f"bad [{where}] table: {exc}") from exc


def load_config(path: str | Path | None) -> SimConfig:
    if path is None:
        return SimConfig()
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    if path.suffix == ".json":
        raw = json.loads(path.read_text())
    else:
        try:
            raw = tomllib.loads(path.read_text())
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a table")

    known = {"scenario", "channel", "phy", "mac", "traffic", "energy", "clock"}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown top-level table(s): {sorted(unknown)}")

    chan_table = dict(raw.get("channel", {}))
    variants = {}
    for name, defaults in (("sh", ChannelParams().sh), ("dh", ChannelParams().dh)):
        merged = {**dataclasses.asdict(defaults), **chan_table.pop(name, {})}
        merged["pl_los"] = tuple(merged["pl_los"])
        merged["pl_nlos"] = tuple(merged["pl_nlos"])
        variants[name] = _build(VariantParams, merged, f"channel.{name}")
    channel = _build(ChannelParams, {**chan_table, **variants}, "channel")

    return SimConfig(
        scenario=_build(Scenario, raw.get("scenario", {}), "scenario"),
        channel=channel,
        phy=_build(PhyConfig, raw.get("phy", {}), "phy"),
        mac=_build(MacConfig, raw.get("mac", {}), "mac"),
        traffic=_build(SourceConfig, raw.get("traffic", {}), "traffic"),
        energy=_build(PowerModelParams, raw.get("energy", {}), "energy"),
        clock=_build(SlotClock, raw.get("clock", {}), "clock"),
    )


def config_digest(cfg: SimConfig) -> str:
    """Stable hash of the full configuration, for the run manifest."""
    import hashlib

    blob = json.dumps(dataclasses.asdict(cfg), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()
