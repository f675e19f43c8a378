#!/usr/bin/env python3
"""
GaloisCensus: census of Galois subspaces for elliptic curves

This module provides the command-line entry point.
"""
import argparse
import logging
import sys
import time
from typing import List, Optional

from rich.console import Console

from src.config import (
    DEFAULT_CONSTRUCTIVE_BOUND,
    DEFAULT_ORACLE_BOUND,
    DEFAULT_OUTPUT_FORMAT,
    DEFAULT_SEED,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
    JCLASS_LABELS,
    OUTPUT_FORMATS,
    REFERENCE_FILE,
    SUPPORTED_ELLS,
)
from src.errors import GaloisCensusError
from src.locus import (
    census_grid,
    component_census,
    component_pairs,
    disjoint_count,
    disjoint_group_inventory,
)
from src.report_generator import ReportGenerator
from src.stable_count import JClass, enumerate_stable_subgroups, psi, psi_breakdown
from src.verifier import Verifier

# Set up logging
logging.basicConfig(
    level=logging.INFO, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger("galoiscensus")


class CensusArgumentParser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with EXIT_USAGE."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer")
    if number < 1:
        raise argparse.ArgumentTypeError(f"{value} must be at least 1")
    return number


def _add_degree_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int, help="Degree of the divisor (n >= 3)")
    group.add_argument("--N", type=int, help="Ambient dimension (N >= 2)")


def _add_j_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--j",
        choices=JCLASS_LABELS,
        default="generic",
        help="j-invariant class of the curve (default: generic)",
    )


def build_parser() -> argparse.ArgumentParser:
    """Build the command line parser."""
    parser = CensusArgumentParser(
        prog="galoiscensus",
        description="GaloisCensus: Galois subspaces of embedded elliptic curves",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument(
        "--verbose", "-v", action="store_true", help="Enable verbose output"
    )
    verbosity.add_argument(
        "--quiet", "-q", action="store_true", help="Only log warnings and errors"
    )

    commands = parser.add_subparsers(dest="command", required=True)

    census = commands.add_parser("census", help="Components of the Galois locus")
    _add_degree_arguments(census)
    _add_j_argument(census)
    census.add_argument(
        "--format",
        choices=OUTPUT_FORMATS,
        default=DEFAULT_OUTPUT_FORMAT,
        help="Output format (default: table)",
    )

    psi_parser = commands.add_parser("psi", help="Number of stable subgroups")
    psi_parser.add_argument("--ell", type=int, choices=SUPPORTED_ELLS, required=True)
    psi_parser.add_argument("--m", type=positive_int, required=True)
    _add_j_argument(psi_parser)
    psi_parser.add_argument(
        "--explain", action="store_true", help="Show the per-prime-power factors"
    )

    subgroups = commands.add_parser("subgroups", help="Enumerate stable subgroups")
    subgroups.add_argument("--ell", type=int, choices=SUPPORTED_ELLS, required=True)
    subgroups.add_argument("--m", type=positive_int, required=True)
    subgroups.add_argument("--list", action="store_true", help="List generators")
    subgroups.add_argument(
        "--bound",
        type=positive_int,
        default=DEFAULT_CONSTRUCTIVE_BOUND,
        help=f"Largest m accepted (default: {DEFAULT_CONSTRUCTIVE_BOUND})",
    )

    disjoint = commands.add_parser("disjoint", help="Disjoint Galois subspaces")
    disjoint.add_argument("--n", type=int, required=True)
    _add_j_argument(disjoint)

    verify = commands.add_parser("verify", help="Run every invariant check")
    verify.add_argument("--max-m", type=positive_int, default=DEFAULT_ORACLE_BOUND)
    verify.add_argument(
        "--constructive-max", type=positive_int, default=DEFAULT_CONSTRUCTIVE_BOUND
    )
    verify.add_argument(
        "--with-curves", action="store_true", help="Include finite-field checks"
    )
    verify.add_argument("--reference", default=REFERENCE_FILE, help="Reference file")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)

    table = commands.add_parser("table", help="All three j-classes side by side")
    table.add_argument("--N", type=int, required=True)

    components = commands.add_parser(
        "components", help="(H, <xi>) pairs behind each component"
    )
    _add_degree_arguments(components)
    _add_j_argument(components)
    components.add_argument(
        "--bound", type=positive_int, default=DEFAULT_CONSTRUCTIVE_BOUND
    )

    return parser


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    return build_parser().parse_args(argv)


def _degree(args: argparse.Namespace) -> int:
    return args.n if args.n is not None else args.N + 1


def cmd_census(args: argparse.Namespace) -> int:
    report = component_census(JClass.from_label(args.j), _degree(args))
    sys.stdout.write(ReportGenerator().render(report, args.format))
    return EXIT_OK


def cmd_psi(args: argparse.Namespace) -> int:
    j = JClass.from_label(args.j)
    print(psi(args.ell, j, args.m))
    if args.explain:
        for p, alpha, value in psi_breakdown(args.ell, j, args.m):
            print(f"{p}^{alpha}: {value}")
    return EXIT_OK


def cmd_subgroups(args: argparse.Namespace) -> int:
    subgroups = enumerate_stable_subgroups(args.ell, args.m, args.bound)
    print(len(subgroups))
    if args.list:
        for subgroup in subgroups:
            print(subgroup.describe())
    return EXIT_OK


def cmd_disjoint(args: argparse.Namespace) -> int:
    j = JClass.from_label(args.j)
    count = disjoint_count(j, args.n)
    entries = disjoint_group_inventory(j, args.n)
    sys.stdout.write(ReportGenerator().render_inventory(count, entries))
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    sys.stdout.write(ReportGenerator().render_grid(census_grid(args.N)))
    return EXIT_OK


def cmd_components(args: argparse.Namespace) -> int:
    pairs = component_pairs(JClass.from_label(args.j), _degree(args), args.bound)
    sys.stdout.write(ReportGenerator().render_pairs(pairs))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    start_time = time.time()
    console = Console(stderr=True)
    verifier = Verifier(
        max_m=args.max_m,
        constructive_max=args.constructive_max,
        with_curves=args.with_curves,
        reference_path=args.reference,
        seed=args.seed,
        show_progress=not args.quiet,
        console=console,
    )
    report = verifier.run()
    if not args.quiet:
        console.print(ReportGenerator.verification_table(report))
    logger.info(f"Verification took {time.time() - start_time:.2f} seconds")

    failure = report.first_failure
    if failure is not None:
        print(f"FAIL {failure.name}: {failure.detail}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    print(f"PASS {len(report.results)} checks, {report.total_cases} cases")
    return EXIT_OK


COMMANDS = {
    "census": cmd_census,
    "psi": cmd_psi,
    "subgroups": cmd_subgroups,
    "disjoint": cmd_disjoint,
    "verify": cmd_verify,
    "table": cmd_table,
    "components": cmd_components,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point for GaloisCensus.

    Returns:
        int: Exit code (0 success, 1 usage, 2 verification failure)
    """
    args = parse_arguments(argv)

    # Set logging level
    if args.verbose:
        logger.setLevel(logging.DEBUG)
    elif args.quiet:
        logger.setLevel(logging.WARNING)
    else:
        logger.setLevel(logging.INFO)

    try:
        return COMMANDS[args.command](args)
    except GaloisCensusError as e:
        logger.error(str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
