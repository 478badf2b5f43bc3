"""Scenario geometry and reproducible network drops."""

from dataclasses import dataclass, field

import numpy as np

from . import rng
from .errors import ConfigError

VIDEO = "video"
DATA = "data"

VARIANTS = ("sh", "dh")


@dataclass(frozen=True)
class Scenario:
    """Static single-cell indoor factory deployment.

    The base station sits at the area center on the ceiling; devices are
    placed uniformly at ue_height_m. Heights and campaign length are not
    dictated by the scenario source material, so they are plain defaults
    here and fully overridable.
    """

    area_m: tuple[float, float] = (20.0, 20.0)
    num_devices: int = 20
    video_fraction: float = 0.1
    carrier_ghz: float = 28.0
    bs_height_m: float = 3.0
    ue_height_m: float = 1.5
    inf_variant: str = "dh"
    sim_duration_s: float = 10.0
    num_drops: int = 20
    seed: int = 1

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if len(self.area_m) != 2 or self.area_m[0] <= 0 or self.area_m[1] <= 0:
            raise ConfigError(f"area_m must be two positive lengths, got {self.area_m}")
        if self.num_devices < 0:
            raise ConfigError("num_devices must be non-negative")
        if not 0.0 <= self.video_fraction <= 1.0:
            raise ConfigError("video_fraction must lie in [0, 1]")
        if self.carrier_ghz <= 0:
            raise ConfigError("carrier_ghz must be positive")
        if self.bs_height_m <= 0 or self.ue_height_m <= 0:
            raise ConfigError("heights must be positive")
        if self.inf_variant not in VARIANTS:
            raise ConfigError(f"inf_variant must be one of {VARIANTS}")
        if self.sim_duration_s <= 0:
            raise ConfigError("sim_duration_s must be positive")
        if self.num_drops < 1:
            raise ConfigError("num_drops must be at least 1")

    @property
    def bs_position(self) -> tuple[float, float, float]:
        return (self.area_m[0] / 2.0, self.area_m[1] / 2.0, self.bs_height_m)

    @property
    def num_video(self) -> int:
        return round(self.video_fraction * self.num_devices)


@dataclass(frozen=True)
class Drop:
    """One realization of device placement and role assignment."""

    ue_positions: tuple[tuple[float, float, float], ...]
    ue_roles: tuple[str, ...]
    rng_streams: tuple[tuple[str, tuple[int, int, int]], ...] = field(default=())


def build_drop(scenario: Scenario, drop_index: int) -> Drop:
    """Place devices and assign roles, deterministically from (seed, drop_index)."""
    scenario.validate()
    if drop_index >= scenario.num_drops:
        raise ConfigError(f"drop_index {drop_index} >= num_drops {scenario.num_drops}")

    n = scenario.num_devices
    gen = rng.substream(scenario.seed, drop_index, rng.PLACEMENT)
    xy = gen.uniform((0.0, 0.0), scenario.area_m, size=(n, 2))
    positions = tuple((float(x), float(y), scenario.ue_height_m) for x, y in xy)

    role_gen = rng.substream(scenario.seed, drop_index, rng.ROLES)
    order = role_gen.permutation(n)
    video_ids = set(int(i) for i in order[: scenario.num_video])
    roles = tuple(VIDEO if i in video_ids else DATA for i in range(n))

    streams = tuple(
        (name, (scenario.seed, drop_index, code)) for name, code in rng.STREAM_NAMES.items()
    )
    return Drop(ue_positions=positions, ue_roles=roles, rng_streams=streams)
