"""Render campaign result CSVs into comparison figures.

This package only reads the simulator's published ``results.csv`` schema;
it never simulates anything itself. Two figure shapes are supported: a
dual-axis grouped bar chart (video throughput + data latency per device
configuration) and per-variant radar charts normalized against a baseline
configuration.
"""

from .report import ReportError, ReportSpec, bar_data, load_results, radar_data
from .charts import render_bars, render_radar

__version__ = "0.1.0"

__all__ = [
    "ReportError",
    "ReportSpec",
    "bar_data",
    "load_results",
    "radar_data",
    "render_bars",
    "render_radar",
    "__version__",
]
