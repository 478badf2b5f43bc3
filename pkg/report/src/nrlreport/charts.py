"""Matplotlib rendering. All numbers come from report.bar_data / radar_data."""

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .report import RADAR_AXIS_LABELS, ReportSpec, bar_data, load_results, radar_data

# deterministic output: stable SVG ids, no embedded timestamps
matplotlib.rcParams["svg.hashsalt"] = "nrlreport"

_VARIANT_NAMES = {"sh": "InF-SH", "dh": "InF-DH"}
_BAR_COLORS = {"sh": "#4878cf", "dh": "#6acc65"}
_LAT_COLORS = {"sh": "#d65f5f", "dh": "#956cb4"}


def _save(fig, out_path: Path) -> list[Path]:
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    paths = []
    for suffix in (out_path.suffix or ".png", ".svg"):
        target = out_path.with_suffix(suffix)
        if target in paths:
            continue
        fig.savefig(target, metadata=_clean_metadata(suffix))
        paths.append(target)
    plt.close(fig)
    return paths


def _clean_metadata(suffix: str) -> dict:
    if suffix == ".svg":
        return {"Date": None}
    if suffix == ".png":
        return {"Software": "nrlreport"}
    return {}


def render_bars(spec: ReportSpec) -> list[Path]:
    """Dual-axis grouped bars: video throughput (left), data latency (right)."""
    data = bar_data(load_results(spec.input_csv))
    labels, variants = data["labels"], data["variants"]
    x = np.arange(len(labels), dtype=float)
    width = 0.8 / max(len(variants), 1)

    fig, ax_thr = plt.subplots(figsize=(max(8.0, 1.1 * len(labels)), 4.5))
    ax_lat = ax_thr.twinx()
    for i, variant in enumerate(variants):
        offset = (i - (len(variants) - 1) / 2) * width
        ax_thr.bar(x + offset, data["throughput_mbps"][variant], width=width * 0.9,
                   color=_BAR_COLORS.get(variant, "#888888"),
                   label=f"throughput {_VARIANT_NAMES.get(variant, variant)}")
        ax_lat.plot(x + offset, data["latency_ms"][variant], "o--",
                    color=_LAT_COLORS.get(variant, "#333333"),
                    label=f"latency {_VARIANT_NAMES.get(variant, variant)}")
    ax_thr.set_xticks(x)
    ax_thr.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    ax_thr.set_ylabel("Video throughput [Mbps]")
    ax_lat.set_ylabel("Data latency [ms]")
    handles = ax_thr.get_legend_handles_labels()[0] + ax_lat.get_legend_handles_labels()[0]
    names = ax_thr.get_legend_handles_labels()[1] + ax_lat.get_legend_handles_labels()[1]
    ax_thr.legend(handles, names, fontsize=8, loc="lower right")
    fig.tight_layout()
    return _save(fig, spec.out_path)


def render_radar(spec: ReportSpec) -> list[Path]:
    """One normalized radar per variant; a value of 1 matches the baseline."""
    polygons = radar_data(load_results(spec.input_csv), spec.baseline_label)
    out_path = Path(spec.out_path)
    written: list[Path] = []
    multi = len(polygons) > 1
    for variant, rows in polygons.items():
        n = len(RADAR_AXIS_LABELS)
        angles = [2 * math.pi * i / n for i in range(n)]
        fig, ax = plt.subplots(figsize=(5.5, 5.0), subplot_kw={"projection": "polar"})
        for label in sorted(rows):
            values = rows[label]
            ax.plot(angles + angles[:1], values + values[:1], marker="o", label=label)
        ax.set_xticks(angles)
        ax.set_xticklabels(RADAR_AXIS_LABELS, fontsize=8)
        ax.set_title(f"{_VARIANT_NAMES.get(variant, variant)} (baseline: {spec.baseline_label})",
                     fontsize=10)
        ax.legend(fontsize=8, loc="lower right", bbox_to_anchor=(1.15, -0.1))
        fig.tight_layout()
        target = (
            out_path.with_stem(f"{out_path.stem}_{variant}") if multi else out_path
        )
        written.extend(_save(fig, target))
    return written
