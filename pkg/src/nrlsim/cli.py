"""Command-line entry point.

Subcommands:
  run       one profile/variant over all drops
  campaign  predefined multi-profile sweeps (figure-2 / figure-3 bundles)
  validate  schema-check a config file

Exit codes: 0 success, 2 configuration error, 3 runtime (simulation) error.
"""

import argparse
import dataclasses
import sys

from .config import load_config
from .engine import campaign
from .errors import ConfigError, SimulationError
from .profiles import named_profile, sweep_variants
from .scenario import VARIANTS


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nrlsim",
        description="Slot-level simulator for reduced-capability uplink networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate one profile/variant over all drops")
    p_run.add_argument("--config", default=None, help="TOML or JSON config file")
    p_run.add_argument("--profile", required=True, help="named profile, e.g. NR-L-Low")
    p_run.add_argument("--variant", choices=VARIANTS, default=None)
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--drops", type=int, default=None)
    p_run.add_argument("--duration", type=float, default=None, help="seconds per run")
    p_run.add_argument("--out", required=True, help="output directory")

    p_camp = sub.add_parser("campaign", help="run a predefined profile sweep")
    p_camp.add_argument("--config", default=None)
    group = p_camp.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--paper-fig2", action="store_true",
        help="baseline plus the eight single-knob sweep profiles",
    )
    group.add_argument(
        "--paper-fig3", action="store_true",
        help="NR-L-Low, NR-L-Mid and NR profiles",
    )
    p_camp.add_argument("--workers", type=int, default=1)
    p_camp.add_argument("--out", required=True)

    p_val = sub.add_parser("validate", help="check a config file and exit")
    p_val.add_argument("--config", required=True)
    return parser


def _apply_overrides(cfg, args):
    updates = {}
    if getattr(args, "seed", None) is not None:
        updates["seed"] = args.seed
    if getattr(args, "drops", None) is not None:
        updates["num_drops"] = args.drops
    if getattr(args, "duration", None) is not None:
        updates["sim_duration_s"] = args.duration
    if getattr(args, "variant", None) is not None:
        updates["inf_variant"] = args.variant
    if updates:
        cfg = dataclasses.replace(cfg, scenario=dataclasses.replace(cfg.scenario, **updates))
    return cfg


def _cmd_run(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    profile = named_profile(args.profile)
    campaign(cfg, [profile], variants=(cfg.scenario.inf_variant,), out_dir=args.out)
    return 0


def _cmd_campaign(args) -> int:
    cfg = load_config(args.config)
    baseline = named_profile("NR-L-Low")
    if args.paper_fig2:
        profiles = [baseline] + sweep_variants(baseline)
    else:
        profiles = [baseline, named_profile("NR-L-Mid"), named_profile("NR")]
    campaign(cfg, profiles, out_dir=args.out, workers=args.workers)
    return 0


def _cmd_validate(args) -> int:
    load_config(args.config)
    print("config ok")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"run": _cmd_run, "campaign": _cmd_campaign, "validate": _cmd_validate}
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SimulationError as exc:
        print(f"simulation error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
