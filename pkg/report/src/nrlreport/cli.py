"""`report bars|radar --in results.csv --out fig.png [--baseline NR]`."""

import argparse
import sys
from pathlib import Path

from .charts import render_bars, render_radar
from .report import ReportError, ReportSpec


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="report", description="Render campaign result CSVs into figures."
    )
    sub = parser.add_subparsers(dest="kind", required=True)
    for kind, text in (("bars", "grouped throughput/latency bars"),
                       ("radar", "normalized per-variant radar charts")):
        p = sub.add_parser(kind, help=text)
        p.add_argument("--in", dest="input_csv", required=True, help="results.csv path")
        p.add_argument("--out", required=True, help="output image (PNG; SVG twin is also written)")
        if kind == "radar":
            p.add_argument("--baseline", default="NR", help="row label to normalize against")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    spec = ReportSpec(
        input_csv=Path(args.input_csv),
        kind=args.kind,
        out_path=Path(args.out),
        baseline_label=getattr(args, "baseline", "NR"),
    )
    try:
        paths = render_bars(spec) if spec.kind == "bars" else render_radar(spec)
    except ReportError as exc:
        print(f"report error: {exc}", file=sys.stderr)
        return 2
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
