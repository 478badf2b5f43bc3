"""Link budget, MCS tables, link adaptation and block-error evaluation."""

import csv
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .channel import LinkState
from .errors import ConfigError
from .profiles import DeviceProfile

THERMAL_NOISE_DBM_HZ = -174.0
THRESHOLD_FLOOR_DB = -20.0


@dataclass(frozen=True)
class McsEntry:
    index: int
    modulation_order: int
    code_rate: float
    spectral_efficiency: float
    min_sinr_db: float


@dataclass(frozen=True)
class LinkBudget:
    tx_power_dbm: float
    tx_gain_db: float
    rx_gain_db: float
    pathloss_db: float
    shadow_db: float
    noise_dbm: float

    @property
    def mean_snr_db(self) -> float:
        return (
            self.tx_power_dbm
            + self.tx_gain_db
            + self.rx_gain_db
            - self.pathloss_db
            - self.shadow_db
            - self.noise_dbm
        )


@dataclass(frozen=True)
class PhyConfig:
    """Radio-chain parameters shared by every device in a run.

    implementation_loss_db lumps everything the abstract budget omits
    (non-ideal beamforming/combining, cabling, body and clutter losses).
    The default calibrates the baseline SINR into the regime where link
    adaptation actually binds; set it to 0 for textbook budget numbers.
    """

    bs_elements: int = 64
    noise_figure_db: float = 7.0
    amc_margin_db: float = 2.0
    implementation_loss_db: float = 31.0
    ema_alpha: float = 0.1
    bler_beta_db: float = 0.5
    re_per_prb: int = 144  # 12 subcarriers x 12 data symbols of 14

    def __post_init__(self):
        if self.bs_elements < 1:
            raise ConfigError("bs_elements must be >= 1")
        if not 0 < self.ema_alpha <= 1:
            raise ConfigError("ema_alpha must lie in (0, 1]")
        if self.bler_beta_db <= 0:
            raise ConfigError("bler_beta_db must be positive")


def array_gain_db(num_elements: int) -> float:
    """Boresight analog beamforming gain; static nodes, perfect alignment."""
    if num_elements < 1:
        raise ConfigError("num_elements must be >= 1")
    return 10.0 * math.log10(num_elements)


def noise_power_dbm(bandwidth_mhz: float, noise_figure_db: float) -> float:
    if bandwidth_mhz <= 0:
        raise ConfigError("bandwidth must be positive")
    return THERMAL_NOISE_DBM_HZ + 10.0 * math.log10(bandwidth_mhz * 1e6) + noise_figure_db


def mcs_threshold_db(entry: McsEntry, margin_db: float) -> float:
    """Shannon-gap SINR needed to sustain the entry's spectral efficiency."""
    se = entry.spectral_efficiency
    if se <= 0:
        return THRESHOLD_FLOOR_DB + margin_db
    raw = 10.0 * math.log10(2.0**se - 1.0)
    return max(raw, THRESHOLD_FLOOR_DB) + margin_db


def _shannon_db(se: float) -> float:
    if se <= 0:
        return THRESHOLD_FLOOR_DB
    return max(10.0 * math.log10(2.0**se - 1.0), THRESHOLD_FLOOR_DB)


def load_mcs_table(margin_db: float = 2.0) -> list[McsEntry]:
    """Read the shipped MCS CSV and attach selection thresholds.

    The raw table has a tiny spectral-efficiency dip at the QAM16->QAM64
    boundary (index 16 -> 17); thresholds are monotonized so that selection
    by threshold is well defined.
    """
    text = resources.files("nrlsim.data").joinpath("mcs_table.csv").read_text()
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    entries = []
    prev_min = -math.inf
    for row in csv.DictReader(lines):
        qm = int(row["modulation_order"])
        rate = int(row["target_rate_x1024"]) / 1024.0
        se = qm * rate
        min_sinr = _shannon_db(se) + margin_db
        if min_sinr <= prev_min:
            min_sinr = prev_min + 1e-6
        prev_min = min_sinr
        entries.append(
            McsEntry(
                index=int(row["index"]),
                modulation_order=qm,
                code_rate=rate,
                spectral_efficiency=se,
                min_sinr_db=min_sinr,
            )
        )
    return entries


def load_prb_table() -> dict[float, int]:
    text = resources.files("nrlsim.data").joinpath("prb_table.csv").read_text()
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    return {float(r["bandwidth_mhz"]): int(r["num_prb"]) for r in csv.DictReader(lines)}


def prb_for_bandwidth(bandwidth_mhz: float, table: dict[float, int] | None = None) -> int:
    table = table if table is not None else load_prb_table()
    try:
        return table[float(bandwidth_mhz)]
    except KeyError:
        raise ConfigError(
            f"no PRB allocation for {bandwidth_mhz} MHz; known: {sorted(table)}"
        ) from None


def link_budget(profile: DeviceProfile, link: LinkState, cfg: PhyConfig) -> LinkBudget:
    return LinkBudget(
        tx_power_dbm=profile.max_tx_power_dbm,
        tx_gain_db=array_gain_db(profile.num_antenna_elements),
        rx_gain_db=array_gain_db(cfg.bs_elements) - cfg.implementation_loss_db,
        pathloss_db=link.pathloss_db,
        shadow_db=link.shadow_db,
        noise_dbm=noise_power_dbm(profile.bandwidth_mhz, cfg.noise_figure_db),
    )


def mean_snr_db(profile: DeviceProfile, link: LinkState, cfg: PhyConfig) -> float:
    """Average uplink SNR; single cell and TDMA, so SINR == SNR."""
    return link_budget(profile, link, cfg).mean_snr_db


def select_mcs(inst_sinr_db: float, max_mcs_index: int, table: list[McsEntry]) -> McsEntry | None:
    """Highest usable index not exceeding the device cap; None on outage."""
    chosen = None
    for entry in table:
        if entry.index > max_mcs_index:
            break
        if entry.min_sinr_db <= inst_sinr_db:
            chosen = entry
    return chosen


def transport_block_size_bits(num_prb: int, entry: McsEntry, re_per_prb: int = 144) -> int:
    if num_prb < 1:
        raise ConfigError("num_prb must be >= 1")
    return math.floor(num_prb * re_per_prb * entry.spectral_efficiency)


def combining_gain_db(harq_attempt: int) -> float:
    """Chase-combining SINR gain after `harq_attempt` transmissions."""
    if harq_attempt < 1:
        raise ConfigError("harq_attempt starts at 1")
    return 10.0 * math.log10(harq_attempt)


def block_error_probability(
    inst_sinr_db: float, entry: McsEntry, harq_attempt: int, beta_db: float = 0.5
) -> float:
    """Logistic BLER around the entry's margin-free Shannon threshold."""
    s_eff = inst_sinr_db + combining_gain_db(harq_attempt)
    x = (s_eff - _shannon_db(entry.spectral_efficiency)) / beta_db
    if x > 50.0:
        return 0.0
    if x < -50.0:
        return 1.0
    return 1.0 / (1.0 + math.exp(x))


def block_error(
    inst_sinr_db: float,
    entry: McsEntry,
    harq_attempt: int,
    gen: np.random.Generator,
    beta_db: float = 0.5,
) -> bool:
    """Draw one decode outcome. True means the transport block failed."""
    p = block_error_probability(inst_sinr_db, entry, harq_attempt, beta_db)
    return bool(gen.random() < p)
