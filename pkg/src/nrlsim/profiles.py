"""Device capability profiles and the single-knob sweep of the campaign."""

import warnings
from dataclasses import dataclass, asdict, replace

from .errors import ConfigError

# Knob values covered by the campaign grid. Values outside these sets are
# allowed (warning only) so exploratory configurations stay runnable.
_BANDWIDTH_GRID = (50.0, 100.0, 200.0)
_MCS_GRID = (9, 16, 28)
_ANTENNA_GRID = (1, 4, 16)
_POWER_GRID = (13.0, 18.0, 23.0)


@dataclass(frozen=True)
class DeviceProfile:
    """The four simplification knobs of a reduced-capability device."""

    bandwidth_mhz: float
    max_mcs_index: int
    num_antenna_elements: int
    max_tx_power_dbm: float
    label: str

    def __post_init__(self):
        if self.bandwidth_mhz <= 0:
            raise ConfigError(f"bandwidth must be positive, got {self.bandwidth_mhz}")
        if not 0 <= self.max_mcs_index <= 28:
            raise ConfigError(f"max_mcs_index must be in 0..28, got {self.max_mcs_index}")
        if self.num_antenna_elements < 1:
            raise ConfigError(f"need at least one antenna element, got {self.num_antenna_elements}")
        for value, grid, knob in (
            (self.bandwidth_mhz, _BANDWIDTH_GRID, "bandwidth_mhz"),
            (self.max_mcs_index, _MCS_GRID, "max_mcs_index"),
            (self.num_antenna_elements, _ANTENNA_GRID, "num_antenna_elements"),
            (self.max_tx_power_dbm, _POWER_GRID, "max_tx_power_dbm"),
        ):
            if value not in grid:
                warnings.warn(f"{knob}={value} is outside the campaign grid {grid}", stacklevel=3)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "DeviceProfile":
        return cls(**d)


_NAMED = {
    "nr-l-low": DeviceProfile(50.0, 9, 1, 13.0, label="NR-L-Low"),
    "nr-l-mid": DeviceProfile(50.0, 9, 4, 18.0, label="NR-L-Mid"),
    "nr": DeviceProfile(200.0, 28, 16, 23.0, label="NR"),
}

# Accepted aliases for the three named configurations.
_ALIASES = {
    "nrllow": "nr-l-low",
    "nrlmid": "nr-l-mid",
    "nrrelease15": "nr",
    "nr-release-15": "nr",
}


def named_profile(name: str) -> DeviceProfile:
    """Look up one of the three named configurations: NR-L-Low, NR-L-Mid, NR."""
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key not in _NAMED:
        raise ConfigError(f"unknown profile {name!r}; choose from {sorted(_NAMED)}")
    return _NAMED[key]


def sweep_variants(baseline: DeviceProfile) -> list[DeviceProfile]:
    """The eight single-knob relaxations of the NR-L-Low baseline.

    Order: bandwidth {100, 200}, max MCS {16, 28}, antennas {4, 16},
    TX power {18, 23} -- one knob changed per element.
    """
    if baseline != _NAMED["nr-l-low"]:
        raise ConfigError("the sweep is defined around the NR-L-Low baseline")
    return [
        replace(baseline, bandwidth_mhz=100.0, label="BW: 100 MHz"),
        replace(baseline, bandwidth_mhz=200.0, label="BW: 200 MHz"),
        replace(baseline, max_mcs_index=16, label="Max MCS index: 16"),
        replace(baseline, max_mcs_index=28, label="Max MCS index: 28"),
        replace(baseline, num_antenna_elements=4, label="UE antenna elements: 4"),
        replace(baseline, num_antenna_elements=16, label="UE antenna elements: 16"),
        replace(baseline, max_tx_power_dbm=18.0, label="Max TX power: 18 dBm"),
        replace(baseline, max_tx_power_dbm=23.0, label="Max TX power: 23 dBm"),
    ]
