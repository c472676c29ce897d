"""Command-line entry point: ``tableaux-lab <experiment> --config path.json``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import EXPERIMENTS, ExperimentConfig
from .experiments import run

log = logging.getLogger("tableaux_lab")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tableaux-lab", description="Run a word-shape / spectrum experiment.")
    ap.add_argument("experiment", choices=EXPERIMENTS)
    ap.add_argument("--config", type=Path, help="JSON file with ExperimentConfig fields")
    ap.add_argument("--seed", type=int, help="override the config seed")
    ap.add_argument("--out", type=Path, default=Path("tableaux-lab-out"), help="output directory")
    ap.add_argument("--exact-rational", action="store_true", help="use rational arithmetic in exact checks")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    data = json.loads(args.config.read_text()) if args.config else {}
    if data.get("experiment", args.experiment) != args.experiment:
        log.warning("config names experiment %r; running %r", data["experiment"], args.experiment)
    data["experiment"] = args.experiment
    if args.seed is not None:
        data["seed"] = args.seed
    if args.exact_rational:
        data["exact_rational"] = True
    try:
        cfg = ExperimentConfig.from_dict(data)
    except (TypeError, ValueError) as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    report = run(cfg)
    for path in report.write(args.out):
        log.info("wrote %s", path)
    print(report.summary())
    print("all criteria passed" if report.passed else f"failed: {', '.join(report.failures())}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
