import csv

import pytest

from nrlreport import report

SWEEP_LABELS = [
    "NR-L-Low", "BW: 100 MHz", "BW: 200 MHz", "Max MCS index: 16", "Max MCS index: 28",
    "UE antenna elements: 4", "UE antenna elements: 16", "Max TX power: 18 dBm",
    "Max TX power: 23 dBm",
]

COLUMNS = [
    "label", "variant", "throughput_video_bps", "latency_data_ms",
    "deadline_video", "deadline_data", "prr_video", "prr_data", "power_overall_mw",
]


def write_csv(path, rows):
    with open(path, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=COLUMNS)
        w.writeheader()
        w.writerows(rows)
    return path


def row(label, variant, thr=9e6, lat=20.0, dv=0.9, dd=0.95, pv=1.0, pd=1.0, pw=30.0):
    return dict(label=label, variant=variant, throughput_video_bps=thr, latency_data_ms=lat,
                deadline_video=dv, deadline_data=dd, prr_video=pv, prr_data=pd,
                power_overall_mw=pw)


@pytest.fixture
def sweep_csv(tmp_path):
    rows = []
    for i, label in enumerate(SWEEP_LABELS):
        for v in ("sh", "dh"):
            rows.append(row(label, v, thr=8e6 + i * 1e5, lat=30.0 - i))
    return write_csv(tmp_path / "results.csv", rows)


@pytest.fixture
def named_csv(tmp_path):
    rows = []
    for v in ("sh", "dh"):
        rows.append(row("NR-L-Low", v, thr=8e6, pw=25.0, pv=0.98))
        rows.append(row("NR-L-Mid", v, thr=9e6, pw=30.0, pv=0.99))
        rows.append(row("NR", v, thr=10e6, pw=150.0, pv=1.0))
    return write_csv(tmp_path / "results.csv", rows)


def test_load_results_types(sweep_csv):
    rows = report.load_results(sweep_csv)
    assert rows[0]["label"] == "NR-L-Low"
    assert isinstance(rows[0]["throughput_video_bps"], float)


def test_load_results_missing_file(tmp_path):
    with pytest.raises(report.ReportError):
        report.load_results(tmp_path / "nope.csv")


def test_bar_data_passthrough(sweep_csv):
    data = report.bar_data(report.load_results(sweep_csv))
    assert data["labels"] == SWEEP_LABELS
    assert data["variants"] == ["sh", "dh"]
    assert data["throughput_mbps"]["sh"][0] == pytest.approx(8.0)
    assert data["throughput_mbps"]["dh"][8] == pytest.approx(8.8)
    assert data["latency_ms"]["sh"] == [30.0 - i for i in range(9)]


def test_bar_data_single_row(tmp_path):
    path = write_csv(tmp_path / "one.csv", [row("NR", "dh")])
    data = report.bar_data(report.load_results(path))
    assert data["labels"] == ["NR"]
    assert data["throughput_mbps"]["dh"] == [9.0]


def test_bar_data_missing_cell(tmp_path):
    rows = [row("NR-L-Low", "sh"), row("NR-L-Low", "dh"), row("NR", "sh")]
    path = write_csv(tmp_path / "gap.csv", rows)
    with pytest.raises(report.ReportError, match="NR"):
        report.bar_data(report.load_results(path))


def test_radar_self_normalization(named_csv):
    polys = report.radar_data(report.load_results(named_csv), "NR")
    for variant in ("sh", "dh"):
        assert polys[variant]["NR"] == pytest.approx([1.0] * 6)


def test_radar_inverted_energy_axis(named_csv):
    polys = report.radar_data(report.load_results(named_csv), "NR")
    # NR-L-Mid draws 30 mW vs the NR 150 mW: the 1/energy axis reads 5x
    assert polys["dh"]["NR-L-Mid"][-1] == pytest.approx(5.0)
    assert polys["dh"]["NR-L-Mid"][0] == pytest.approx(0.9)


def test_radar_missing_required_label(tmp_path):
    rows = [row("NR-L-Mid", "dh"), row("NR", "dh")]
    path = write_csv(tmp_path / "partial.csv", rows)
    with pytest.raises(report.ReportError, match="NR-L-Low"):
        report.radar_data(report.load_results(path))


def test_radar_zero_baseline_names_column(named_csv, tmp_path):
    rows = [row("NR-L-Low", "dh"), row("NR-L-Mid", "dh"), row("NR", "dh", pw=0.0)]
    path = write_csv(tmp_path / "zero.csv", rows)
    with pytest.raises(report.ReportError, match="power_overall_mw"):
        report.radar_data(report.load_results(path))


def test_spec_validates_kind(tmp_path):
    with pytest.raises(report.ReportError):
        report.ReportSpec(tmp_path / "x.csv", "pie", tmp_path / "x.png")
