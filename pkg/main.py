#!/usr/bin/env python3
"""
Quantum-Torus Orbifold Calculator
══════════════════════════════════
Hochschild and Poisson cohomology of A_theta x| Γ for Γ = Z2, Z3, Z4, Z6.

Usage:
    python main.py --group z2 --degree 2 --window 6 --format json
    python main.py --group z4 --poisson --witnesses --out z4.json
    python main.py --group z3 --numeric-theta sqrt2-1 --format text

Exit codes: 0 all comparisons match, 2 computed with mismatches or unstable
sectors, 1 internal error, 64 usage error.
"""

import argparse
import hashlib
import json
import logging
import sys
from typing import List, Optional, Sequence

from algebra.groups import finite_subgroup
from analytics.report import build_record, emit_report
from cohomology.comparison import ComparisonLift, k2_identity_witness, lift_comparison_maps
from cohomology.engine import InconsistencyError, orbifold_table
from cohomology.poisson import poisson_cohomology_table
from config.run_config import RunConfig
from config.settings import (
    DEFAULT_MAX_WINDOW,
    EXIT_INTERNAL,
    EXIT_MATCH,
    EXIT_MISMATCH,
    EXIT_USAGE,
    GROUP_GENERATORS,
    OUTPUT_FORMATS,
    THETA_CATALOG,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qtorus-orbifold", description="Quantum-torus orbifold cohomology calculator")
    parser.add_argument("--group", required=True, type=str.upper, choices=sorted(GROUP_GENERATORS),
                        help="finite subgroup of SL2(Z)")
    parser.add_argument("--degree", type=int, action="append", choices=(0, 1, 2),
                        help="cohomological degree (repeatable; default all)")
    parser.add_argument("--window", type=int, default=DEFAULT_MAX_WINDOW, help="largest window radius")
    parser.add_argument("--numeric-theta", choices=sorted(THETA_CATALOG), default=None,
                        help="cross-check every rank numerically at this theta")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default="json")
    parser.add_argument("--out", default=None, help="write the report here instead of stdout")
    parser.add_argument("--verify-invariance", action=argparse.BooleanOptionalAction, default=True,
                        help="compare the group action under a second comparison lift")
    parser.add_argument("--poisson", action="store_true", help="certify Poisson structures and tabulate")
    parser.add_argument("--witnesses", action="store_true", help="verify the comparison lift and the k2 identity")
    parser.add_argument("--verbose", action="store_true")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    degrees = tuple(sorted(set(args.degree))) if args.degree else (0, 1, 2)
    if args.poisson:
        degrees = (0, 1, 2)
    return RunConfig(
        group=args.group,
        degrees=degrees,
        max_window=args.window,
        theta=args.numeric_theta,
        output_format=args.format,
        output_path=args.out,
        verify_invariance=args.verify_invariance,
        poisson=args.poisson,
        witnesses=args.witnesses,
    ).validate()


def _status(message: str):
    print(message, file=sys.stderr)


def _digest(payload: dict) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode("utf-8")).hexdigest()


def run(config: RunConfig) -> int:
    group = finite_subgroup(config.group)
    lift = ComparisonLift()
    _status(f"▶ {group.label}: degrees {list(config.degrees)}, windows up to {config.max_window}")

    table = orbifold_table(
        group, config.max_window, config.degrees, config.theta_value,
        verify_invariance=config.verify_invariance, lift=lift,
    )
    digests: List[str] = []
    if config.witnesses:
        witness = lift_comparison_maps(lift=lift)
        identity = k2_identity_witness(lift)
        if identity is None:
            raise InconsistencyError("k2 identity does not hold up to a coboundary")
        digests.append(_digest(witness.summary()))
        digests.append(_digest({"k2_identity_sign": identity.sign, "P": repr(identity.P), "Q": repr(identity.Q)}))
        _status(f"✅ comparison lift: {witness.squares_checked} squares, k2 identity sign {identity.sign:+d}")

    poisson = None
    if config.poisson:
        poisson = poisson_cohomology_table(group, table, lift)
        digests.extend(poisson.digests)
        _status(f"✅ {len(poisson.structures)} Poisson structures certified")

    record = build_record(config, group, table, poisson, digests)
    text = emit_report(record, config.output_format, config.output_path)
    if config.output_path is None:
        sys.stdout.write(text)

    ok = table.all_match and table.stable and (poisson is None or poisson.all_match)
    if not ok:
        _status("⚠️  computed values differ from the reference table or a sector did not stabilize")
    return EXIT_MATCH if ok else EXIT_MISMATCH


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        config = _config_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return run(config)
    except InconsistencyError as exc:
        print(f"❌ internal inconsistency: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"❌ cannot write report: {exc}", file=sys.stderr)
    except Exception as exc:  # noqa: BLE001
        print(f"❌ {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_INTERNAL


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
