class ConfigError(Exception):
    """Invalid scenario / channel / radio configuration. CLI exit code 2."""


class SimulationError(Exception):
    """Internal inconsistency detected during a run. CLI exit code 3."""
