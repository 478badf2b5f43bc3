"""CSV loading and the pure number-crunching behind both figures.

Every plotted value is a direct pass-through (or a single division, for
radar normalization) of a CSV cell, so the figure content is testable
without touching matplotlib.
"""

import csv
from dataclasses import dataclass, field
from pathlib import Path


class ReportError(Exception):
    """Bad input CSV or report specification."""


BAR_COLUMNS = ("label", "variant", "throughput_video_bps", "latency_data_ms")

# Radar axes: outward always means better, hence the inverted power column.
RADAR_AXES = (
    ("throughput_video_bps", False),
    ("deadline_video", False),
    ("deadline_data", False),
    ("prr_video", False),
    ("prr_data", False),
    ("power_overall_mw", True),  # inverted: 1/energy
)

RADAR_AXIS_LABELS = (
    "Video throughput",
    "Video deadline ratio",
    "Data deadline ratio",
    "Video PRR",
    "Data PRR",
    "1 / energy",
)

RADAR_REQUIRED_LABELS = ("NR-L-Low", "NR-L-Mid", "NR")


@dataclass(frozen=True)
class ReportSpec:
    input_csv: Path
    kind: str  # "bars" | "radar"
    out_path: Path
    baseline_label: str = "NR"

    def __post_init__(self):
        if self.kind not in ("bars", "radar"):
            raise ReportError(f"unknown figure kind {self.kind!r}")


def load_results(path: Path | str) -> list[dict]:
    """Read a results.csv into rows of {column: str|float|None}."""
    path = Path(path)
    if not path.exists():
        raise ReportError(f"results file not found: {path}")
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None:
            raise ReportError(f"{path} is empty")
        rows = []
        for raw in reader:
            row = {}
            for key, value in raw.items():
                if key in ("label", "variant"):
                    row[key] = value
                elif value is None or value == "":
                    row[key] = None
                else:
                    try:
                        row[key] = float(value)
                    except ValueError:
                        row[key] = value
            rows.append(row)
    if not rows:
        raise ReportError(f"{path} has no data rows")
    return rows


def _require_columns(rows: list[dict], columns) -> None:
    missing = [c for c in columns if c not in rows[0]]
    if missing:
        raise ReportError(f"missing column(s) in results CSV: {missing}")


def variants_in(rows: list[dict]) -> list[str]:
    seen = []
    for row in rows:
        if row["variant"] not in seen:
            seen.append(row["variant"])
    return seen


def bar_data(rows: list[dict]) -> dict:
    """Grouped bar-chart numbers.

    Returns {"labels": [...], "variants": [...],
             "throughput_mbps": {variant: [...]}, "latency_ms": {variant: [...]}}
    with one group per configuration label, in CSV row order.
    """
    _require_columns(rows, BAR_COLUMNS)
    labels = []
    for row in rows:
        if row["label"] not in labels:
            labels.append(row["label"])
    variants = variants_in(rows)
    cell = {(r["label"], r["variant"]): r for r in rows}
    missing = [(l, v) for l in labels for v in variants if (l, v) not in cell]
    if missing:
        raise ReportError(f"missing row(s) for {missing}")

    thr = {v: [cell[(l, v)]["throughput_video_bps"] / 1e6 for l in labels] for v in variants}
    lat = {v: [cell[(l, v)]["latency_data_ms"] for l in labels] for v in variants}
    return {"labels": labels, "variants": variants, "throughput_mbps": thr, "latency_ms": lat}


def radar_data(rows: list[dict], baseline_label: str = "NR") -> dict:
    """Per-variant normalized radar polygons.

    Returns {variant: {label: [axis values...]}}; each value is the row's
    cell divided by the baseline row's cell (inverted for the energy axis,
    so outward means cheaper).
    """
    _require_columns(rows, ["label", "variant"] + [c for c, _ in RADAR_AXES])
    out: dict = {}
    for variant in variants_in(rows):
        vrows = {r["label"]: r for r in rows if r["variant"] == variant}
        if baseline_label not in vrows:
            raise ReportError(f"baseline row {baseline_label!r} missing for variant {variant!r}")
        for required in RADAR_REQUIRED_LABELS:
            if required not in vrows:
                raise ReportError(f"required row {required!r} missing for variant {variant!r}")
        base = vrows[baseline_label]
        for column, _ in RADAR_AXES:
            if not base[column]:
                raise ReportError(
                    f"baseline {baseline_label!r} has zero/empty {column!r}; cannot normalize"
                )
        polygons = {}
        for label, row in vrows.items():
            values = []
            for column, inverted in RADAR_AXES:
                cell = row[column]
                if cell is None:
                    raise ReportError(f"row ({label!r}, {variant!r}) has empty {column!r}")
                ratio = cell / base[column]
                if inverted:
                    if ratio == 0:
                        raise ReportError(f"row ({label!r}, {variant!r}) has zero {column!r}")
                    ratio = 1.0 / ratio
                values.append(ratio)
            polygons[label] = values
        out[variant] = polygons
    return out
