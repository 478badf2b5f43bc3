"""Large-scale indoor-factory channel: LOS probability, pathloss, shadowing.

Pathloss coefficients follow the standardized indoor-factory curves
(verified against TR 38.901 Table 7.4.1-1):

    LOS        31.84 + 21.50 log10(d3d) + 19.00 log10(fc)
    SH NLOS    32.40 + 23.00 log10(d3d) + 20.00 log10(fc)
    DH NLOS    33.63 + 21.90 log10(d3d) + 20.00 log10(fc)

with the NLOS value lower-bounded by the LOS value. LOS probability uses
exp(-d2d/k) with k = -d_clutter / ln(1 - r), scaled by
(h_bs - h_ut)/(h_c - h_ut) for the elevated-BS sub-scenarios. Shadow fading
is frozen per link (devices are static); a per-slot Gaussian dB offset
stands in for small-scale fading.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

MIN_DISTANCE_M = 1.0  # clamp to avoid the pathloss singularity under the BS


@dataclass(frozen=True)
class VariantParams:
    """Coefficients for one clutter density (sparse or dense)."""

    pl_los: tuple[float, float, float] = (31.84, 21.50, 19.00)
    pl_nlos: tuple[float, float, float] = (32.40, 23.00, 20.00)
    shadow_std_los_db: float = 4.3
    shadow_std_nlos_db: float = 5.9
    clutter_density: float = 0.2     # r, fraction of floor area covered
    clutter_size_m: float = 10.0     # d_clutter
    clutter_height_m: float = 2.0    # h_c, kept below the BS height

    def __post_init__(self):
        if not 0.0 < self.clutter_density < 1.0:
            raise ConfigError("clutter_density must lie in (0, 1)")
        if self.clutter_size_m <= 0:
            raise ConfigError("clutter_size_m must be positive")
        if self.shadow_std_los_db < 0 or self.shadow_std_nlos_db < 0:
            raise ConfigError("shadow std devs must be non-negative")


@dataclass(frozen=True)
class ChannelParams:
    sh: VariantParams = VariantParams()
    dh: VariantParams = VariantParams(
        pl_nlos=(33.63, 21.90, 20.00),
        shadow_std_nlos_db=4.0,
        clutter_density=0.6,
        clutter_size_m=2.0,
    )
    fast_fading_std_db: float = 3.0

    def __post_init__(self):
        if self.fast_fading_std_db < 0:
            raise ConfigError("fast_fading_std_db must be non-negative")

    def for_variant(self, variant: str) -> VariantParams:
        if variant == "sh":
            return self.sh
        if variant == "dh":
            return self.dh
        raise ConfigError(f"unknown channel variant {variant!r}")


@dataclass(frozen=True)
class LinkState:
    distance_3d_m: float
    is_los: bool
    pathloss_db: float
    shadow_db: float
    los_probability: float


def los_probability(
    d2d: float,
    variant: str,
    params: ChannelParams,
    bs_height_m: float = 3.0,
    ue_height_m: float = 1.5,
) -> float:
    """Probability that the link is unobstructed at 2D distance d2d."""
    if d2d < 0:
        raise ConfigError("d2d must be non-negative")
    vp = params.for_variant(variant)
    if vp.clutter_height_m <= ue_height_m:
        raise ConfigError(
            f"clutter height {vp.clutter_height_m} must exceed device height {ue_height_m}"
        )
    k = -vp.clutter_size_m / math.log(1.0 - vp.clutter_density)
    k *= (bs_height_m - ue_height_m) / (vp.clutter_height_m - ue_height_m)
    return math.exp(-d2d / k)


def _eval_pl(coeffs: tuple[float, float, float], d3d: float, fc_ghz: float) -> float:
    a, b, c = coeffs
    return a + b * math.log10(d3d) + c * math.log10(fc_ghz)


def pathloss_db(d3d: float, fc_ghz: float, is_los: bool, variant: str, params: ChannelParams) -> float:
    """Large-scale pathloss in dB; NLOS is never better than LOS."""
    if fc_ghz <= 0:
        raise ConfigError("carrier frequency must be positive")
    d3d = max(d3d, MIN_DISTANCE_M)
    vp = params.for_variant(variant)
    pl_los = _eval_pl(vp.pl_los, d3d, fc_ghz)
    if is_los:
        return pl_los
    return max(_eval_pl(vp.pl_nlos, d3d, fc_ghz), pl_los)


def realize_link(
    bs_pos: tuple[float, float, float],
    ue_pos: tuple[float, float, float],
    variant: str,
    params: ChannelParams,
    gen: np.random.Generator,
    fc_ghz: float = 28.0,
) -> LinkState:
    """Draw LOS state and shadow fading once for a static link."""
    dx = bs_pos[0] - ue_pos[0]
    dy = bs_pos[1] - ue_pos[1]
    dz = bs_pos[2] - ue_pos[2]
    d2d = math.hypot(dx, dy)
    d3d = math.sqrt(dx * dx + dy * dy + dz * dz)

    p_los = los_probability(d2d, variant, params, bs_height_m=bs_pos[2], ue_height_m=ue_pos[2])
    is_los = bool(gen.random() < p_los)
    vp = params.for_variant(variant)
    sigma = vp.shadow_std_los_db if is_los else vp.shadow_std_nlos_db
    shadow = float(gen.normal(0.0, sigma)) if sigma > 0 else 0.0

    return LinkState(
        distance_3d_m=d3d,
        is_los=is_los,
        pathloss_db=pathloss_db(d3d, fc_ghz, is_los, variant, params),
        shadow_db=shadow,
        los_probability=p_los,
    )


def instantaneous_offset_db(gen: np.random.Generator, sigma_db: float = 3.0) -> float:
    """Per-slot small-scale fading term, N(0, sigma^2) in dB."""
    if sigma_db == 0:
        return 0.0
    return float(gen.normal(0.0, sigma_db))
