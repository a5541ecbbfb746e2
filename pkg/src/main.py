#!/usr/bin/env python3
"""
sponge-dim
==========

Assouad and lower dimensions of Bernoulli measures on diagonal self-affine
sponges, with exact ordering sets and a symbolic cross-check.

Usage:
    python -m src.main validate spec.json
    python -m src.main dims spec.json --measure natural:12 --oracle full
    python -m src.main gap carpet.json --budget 50000
    python -m src.main orderings spec.json --format text
    python -m src.main render carpet.json --depth 2 --out carpet.svg

Exit codes:
    0 success, 2 invalid sponge, 3 unparseable input,
    4 very strong SPPC fails, 5 analysis not applicable
"""

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

# Add parent directory to path for imports
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from src.config import Config
from src.pipeline.service import AnalysisService
from src.utils.logging import setup_logging

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", type=Path, help="Sponge description (JSON)")
    common.add_argument("--config", "-c", type=str, metavar="PATH", help="Path to configuration file")
    common.add_argument("--seed", type=int, help="Seed for every randomised step")
    common.add_argument("--out", "-o", type=Path, metavar="PATH", help="Write the report (or SVG) here")
    common.add_argument("--format", choices=["json", "text"], default="json", help="Report format")
    common.add_argument("--verbose", "-v", action="store_true", help="Enable debug logging")
    common.add_argument("--quiet", "-q", action="store_true", help="Only warnings and errors")

    parser = argparse.ArgumentParser(
        prog="sponge-dim",
        description="Dimensions of self-affine measures on diagonal sponges",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  sponge-dim validate specs/bedford_mcmullen_2x4.json
  sponge-dim dims specs/bedford_mcmullen_2x4.json --measure uniform
  sponge-dim dims specs/baranski_three_column.json --measure natural:12
  sponge-dim gap specs/baranski_gap.json
  sponge-dim orderings specs/two_map_4d.json --format text
  sponge-dim render specs/baranski_three_column.json --depth 2 --out carpet.svg
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="Parse, validate and check separation")

    dims = sub.add_parser("dims", parents=[common], help="Assouad and lower dimension bounds")
    dims.add_argument("--measure", default="given", metavar="given|uniform|natural:SIGMA",
                      help="Bernoulli weights to analyse (default: the file's weights)")
    dims.add_argument("--oracle", choices=["off", "quick", "full"], help="Symbolic oracle mode")
    dims.add_argument("--formula-only", action="store_true",
                      help="Report formula values even when very strong SPPC fails")
    dims.add_argument("--budget", type=int, metavar="WORDS", help="Cube witness search budget")

    gap = sub.add_parser("gap", parents=[common], help="Minimise dim_A over p and certify the gap")
    gap.add_argument("--budget", type=int, metavar="SAMPLES", help="Random simplex samples for N > 3")
    gap.add_argument("--formula-only", action="store_true",
                     help="Run even when very strong SPPC fails")

    orderings = sub.add_parser("orderings", parents=[common], help="Cube and cylinder ordering sets")
    orderings.add_argument("--budget", type=int, metavar="WORDS", help="Cube witness search budget")
    orderings.add_argument("--force-search", action="store_true",
                           help="Run the cube witness search even for d <= 3")

    render = sub.add_parser("render", parents=[common], help="SVG of depth-k cylinders")
    render.add_argument("--depth", type=int, metavar="K", help="Cylinder depth")

    return parser


def apply_overrides(config: Config, args: argparse.Namespace) -> None:
    """Command-line flags override config values for this run."""
    if args.seed is not None:
        config.oracle.seed = args.seed
    if getattr(args, "oracle", None):
        config.oracle.mode = args.oracle
    budget = getattr(args, "budget", None)
    if budget is not None:
        if args.command == "gap":
            config.solver.gap_samples = budget
        else:
            config.search.max_words = budget
    if getattr(args, "depth", None):
        config.render.depth = args.depth


def emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the exit code."""
    args = build_parser().parse_args(argv)

    config = Config.load(args.config)
    apply_overrides(config, args)

    log_level = "DEBUG" if args.verbose else ("WARNING" if args.quiet else config.logging.level)
    setup_logging(level=log_level, log_file=config.logging.file or None)

    service = AnalysisService(config)
    if args.command == "validate":
        report = service.validate(args.spec)
    elif args.command == "dims":
        report = service.dims(args.spec, args.measure, args.formula_only)
    elif args.command == "gap":
        report = service.gap(args.spec, args.formula_only)
    elif args.command == "orderings":
        report = service.orderings(args.spec, args.force_search)
    else:
        report, svg = service.render(args.spec, config.render.depth, args.out)
        if svg is not None and args.out is None:
            sys.stdout.write(svg)
            return report.exit_code

    emit(report.render(args.format), None if args.command == "render" else args.out)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
