"""Parametric device power model and per-run energy ledger.

Active power decomposes into circuit overhead, per-antenna RF chains
(phase shifters, converters, amplifiers), baseband processing proportional
to bandwidth, and the PA drawing linear TX power over its efficiency.
Reception energy is folded into the circuit term; idle listening into the
idle floor. A device is active in a slot iff it transmits a transport block.
"""

from dataclasses import dataclass

from .errors import ConfigError, SimulationError
from .profiles import DeviceProfile


@dataclass(frozen=True)
class PowerModelParams:
    p_idle_mw: float = 0.5
    p_circuit_mw: float = 20.0
    p_per_antenna_mw: float = 15.0
    p_bb_mw_per_mhz: float = 0.2
    pa_efficiency: float = 0.3

    def __post_init__(self):
        for v in (self.p_idle_mw, self.p_circuit_mw, self.p_per_antenna_mw, self.p_bb_mw_per_mhz):
            if v < 0:
                raise ConfigError("power terms must be non-negative")
        if not 0 < self.pa_efficiency <= 1:
            raise ConfigError("pa_efficiency must lie in (0, 1]")


@dataclass
class EnergyLedger:
    active_time_s: float = 0.0
    idle_time_s: float = 0.0
    energy_mj: float = 0.0

    @property
    def avg_power_mw(self) -> float:
        total = self.active_time_s + self.idle_time_s
        if total == 0:
            return 0.0
        return self.energy_mj / total


def active_power_mw(profile: DeviceProfile, params: PowerModelParams) -> float:
    """Draw while transmitting, in mW."""
    pa_mw = 10.0 ** (profile.max_tx_power_dbm / 10.0) / params.pa_efficiency
    return (
        params.p_circuit_mw
        + profile.num_antenna_elements * params.p_per_antenna_mw
        + params.p_bb_mw_per_mhz * profile.bandwidth_mhz
        + pa_mw
    )


def accumulate(
    ledger: EnergyLedger,
    slot_active: bool,
    slot_duration_s: float,
    active_power_mw: float,
    p_idle_mw: float,
) -> EnergyLedger:
    """Integrate one slot of activity into the ledger (mW * s = mJ)."""
    if slot_duration_s < 0:
        raise SimulationError("negative slot duration")
    if slot_active:
        ledger.active_time_s += slot_duration_s
        ledger.energy_mj += active_power_mw * slot_duration_s
    else:
        ledger.idle_time_s += slot_duration_s
        ledger.energy_mj += p_idle_mw * slot_duration_s
    return ledger
