#!/usr/bin/env python3
"""
Hook Formula Verifier
Command line entry point:

    python verify_hooks.py verify main_b --shifted 2,1 --deg 5
    python verify_hooks.py verify conjecture --dk1 4 --json report.json

Exit codes: 0 when every trial passes, 1 on a mismatch, 2 on usage or
configuration errors.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from hook_verifier import TARGETS, HookVerifier, VerificationJob
from qt_series import QtPoint
from report_io import PosetFileError, parse_poset_file, write_report
from tableaux import Partition, StrictPartition
from verify_config import ConfigError, load_config

logger = logging.getLogger(__name__)

EXIT_PASS, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Exact verification of (q,t)-hook formulas")
    commands = parser.add_subparsers(dest="command", required=True)
    verify = commands.add_parser("verify", help="Run one verification target")
    verify.add_argument("target", choices=TARGETS)
    source = verify.add_mutually_exclusive_group()
    source.add_argument("--shape", help="Partition such as 3,2,1")
    source.add_argument("--shifted", help="Strict partition such as 3,1")
    source.add_argument("--tree", help='Rooted tree such as "(a(b)(c(d)))"')
    source.add_argument("--dk1", type=int, help="Double-tailed diamond d_k(1)")
    source.add_argument("--random-tree", help="Random rooted tree as SIZE,SEED")
    source.add_argument("--poset", help="Poset JSON file")
    verify.add_argument("--two-color", action="store_true", help="Color the shifted diagonal with 0 and 0'")
    verify.add_argument("--profile", help="Profile tau for the refined target")
    verify.add_argument("--N", dest="n", type=int, help="Bound N >= largest part (defaults to mu_1)")
    verify.add_argument("--deg", type=int, help="Total degree bound D")
    verify.add_argument("--trials", type=int, help="Number of sampled (q,t) points")
    verify.add_argument("--seed", type=int, help="Seed for the point sampler")
    verify.add_argument("--qt", help="Fixed point as p/q,r/s")
    verify.add_argument("--json", dest="json_out", help="Write the JSON report here")
    verify.add_argument("--timing", action="store_true", help="Include elapsed time in the report")
    verify.add_argument("--config", help="Config file (default ~/.qt-hook-verifier/config.json)")
    noise = verify.add_mutually_exclusive_group()
    noise.add_argument("--verbose", action="store_true")
    noise.add_argument("--quiet", action="store_true")
    return parser


def parse_random_tree(text: str) -> Tuple[int, int]:
    size, sep, seed = text.partition(",")
    if not sep:
        raise UsageError(f"Expected SIZE,SEED for --random-tree, got {text!r}")
    return int(size), int(seed)


def job_from_args(args: argparse.Namespace, config) -> VerificationJob:
    try:
        return VerificationJob(
            target=args.target,
            shape=Partition.parse(args.shape) if args.shape else None,
            shifted=StrictPartition.parse(args.shifted) if args.shifted else None,
            two_color=args.two_color,
            tree=args.tree,
            dk1=args.dk1,
            random_tree=parse_random_tree(args.random_tree) if args.random_tree else None,
            poset=parse_poset_file(args.poset) if args.poset else None,
            profile=Partition.parse(args.profile) if args.profile is not None else None,
            n=args.n,
            deg=config.deg,
            trials=config.trials,
            seed=config.seed,
            qt=QtPoint.parse(args.qt) if args.qt else None,
        )
    except ValueError as e:
        raise UsageError(str(e)) from e


def report_path(args: argparse.Namespace, config) -> Optional[Path]:
    if args.json_out:
        return Path(args.json_out)
    if config.report_dir:
        return Path(config.report_dir) / f"{args.target}-seed{config.seed}.json"
    return None


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level)

    try:
        config = load_config(Path(args.config) if args.config else None)
        config = config.override(deg=args.deg, trials=args.trials, seed=args.seed)
        logger.debug(f"Effective config: {config}")
        job = job_from_args(args, config)
    except (ConfigError, PosetFileError, UsageError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE

    if not args.quiet:
        print("=" * 50)
        print(f"Verifying {job.target} to degree {job.deg}")
        print("=" * 50)

    try:
        report = HookVerifier(config).run(job)
    except ValueError as e:
        # bad profiles and other inputs only detected while building a side
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE

    destination = report_path(args, config)
    if destination:
        if not write_report(report, destination, include_elapsed=args.timing):
            return EXIT_USAGE

    if report.passed:
        if not args.quiet:
            print(f"✅ {job.target} passed ({len(report.trials)} trial(s), {report.elapsed:.2f}s)")
        return EXIT_PASS
    mismatch = report.first_mismatch
    print(f"❌ {job.target} failed: {mismatch.check} at {mismatch.where}")
    if mismatch.lhs is not None:
        print(f"   lhs = {mismatch.lhs}, rhs = {mismatch.rhs}")
    return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
