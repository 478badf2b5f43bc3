#!/usr/bin/env python3
"""Run the full device-simplification campaign and render both figures.

Produces, under --out (default ./campaign_out):

    sweep/    baseline + eight single-knob configurations, both variants
    named/    NR-L-Low / NR-L-Mid / NR comparison
    figures/  grouped bar chart and per-variant radar charts

Figure rendering needs the companion ``nrlreport`` package; the simulation
outputs are written either way.
"""

import argparse
import sys
from pathlib import Path

from nrlsim.config import load_config
from nrlsim.engine import campaign
from nrlsim.profiles import named_profile, sweep_variants


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--config", default=None, help="TOML/JSON config file")
    parser.add_argument("--out", default="campaign_out", type=Path)
    parser.add_argument("--workers", default=1, type=int)
    args = parser.parse_args()

    cfg = load_config(args.config)
    low = named_profile("NR-L-Low")

    sweep_dir = args.out / "sweep"
    named_dir = args.out / "named"
    print(f"sweep campaign -> {sweep_dir}")
    campaign(cfg, [low] + sweep_variants(low), out_dir=sweep_dir, workers=args.workers)
    print(f"named-profile campaign -> {named_dir}")
    campaign(cfg, [low, named_profile("NR-L-Mid"), named_profile("NR")],
             out_dir=named_dir, workers=args.workers)

    try:
        from nrlreport.charts import render_bars, render_radar
        from nrlreport.report import ReportSpec
    except ImportError:
        print("nrlreport not installed; skipping figures", file=sys.stderr)
        return 0

    fig_dir = args.out / "figures"
    for path in render_bars(ReportSpec(sweep_dir / "results.csv", "bars", fig_dir / "sweep_bars.png")):
        print(path)
    for path in render_radar(ReportSpec(named_dir / "results.csv", "radar", fig_dir / "named_radar.png")):
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
