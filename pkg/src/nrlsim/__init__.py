"""Slot-level uplink simulator for reduced-capability NR devices at mmWave.

A single indoor-factory cell: one ceiling-mounted base station at 28 GHz,
static uplink devices, full-band TDMA scheduling with HARQ, adaptive
modulation and coding, and a parametric device power model. Everything is
deterministic given (scenario, seed).
"""

from .errors import ConfigError, SimulationError
from .profiles import DeviceProfile, named_profile, sweep_variants
from .scenario import Scenario, Drop, build_drop

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "SimulationError",
    "DeviceProfile",
    "named_profile",
    "sweep_variants",
    "Scenario",
    "Drop",
    "build_drop",
    "__version__",
]
