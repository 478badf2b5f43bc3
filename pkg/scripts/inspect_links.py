#!/usr/bin/env python3
"""Dump per-device link budgets and a per-slot schedule trace for one run.

Handy for debugging a single (profile, variant, drop) cell:

    python scripts/inspect_links.py --profile NR-L-Low --variant dh --drop 0 --out debug/
"""

import argparse
import sys
from pathlib import Path

from nrlsim.config import load_config
from nrlsim.engine import run
from nrlsim.profiles import named_profile


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--config", default=None)
    parser.add_argument("--profile", default="NR-L-Low")
    parser.add_argument("--variant", choices=("sh", "dh"), default="dh")
    parser.add_argument("--drop", type=int, default=0)
    parser.add_argument("--out", type=Path, default=Path("debug"))
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    result = run(
        load_config(args.config),
        named_profile(args.profile),
        args.drop,
        variant=args.variant,
        trace_path=args.out / "trace.csv",
        links_path=args.out / "links.csv",
    )
    print(f"wrote {args.out / 'links.csv'} and {args.out / 'trace.csv'}")
    for key in ("throughput_video_bps", "throughput_data_bps", "latency_video_ms",
                "latency_data_ms", "prr_video", "prr_data", "sinr_db",
                "power_video_mw", "power_data_mw"):
        print(f"{key:22s} {getattr(result, key)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
