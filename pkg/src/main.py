"""Command-line entry point for the entropy-production toolkit.

Exit codes: 0 success, 1 usage or configuration error, 2 property-suite or
consistency failure, 3 I/O failure.
"""
import argparse
import sys
from typing import List, Optional

from config import Config
from src.harness.properties import run_property_suite
from src.harness.sweep import run_sweep
from src.harness.sweep_config import SweepConfig
from src.reporting.report_generator import ReportGenerator, emit_csv, emit_summary, write_metadata
from src.utils.errors import ConfigInvalidError, ConsistencyError, ParameterOutOfRangeError
from utils.logger import setup_logger

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PROPERTY_FAILURE = 2
EXIT_IO = 3

logger = setup_logger(__name__)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with the usage code instead of argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='entropy_production',
                     description='Entropy production of a qubit under generalized amplitude damping')
    parser.add_argument('--log-level', default=None,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help=f"Logging level (default: {Config.LOG_LEVEL})")

    sweep_flags = _Parser(add_help=False)
    sweep_flags.add_argument('--shots', type=int, help=f"Shots per basis (default: {Config.DEFAULT_SHOTS})")
    sweep_flags.add_argument('--bootstrap', type=int,
                             help=f"Bootstrap resamples (default: {Config.DEFAULT_BOOTSTRAP})")
    sweep_flags.add_argument('--seed', type=int, help=f"Master seed (default: {Config.DEFAULT_SEED})")
    sweep_flags.add_argument('--out', help=f"CSV output path (default: {Config.OUTPUT_DIR}/<scenario>.csv)")
    sweep_flags.add_argument('--r-points', type=int,
                             help=f"Uniform r-grid size (default: {Config.DEFAULT_R_POINTS})")
    sweep_flags.add_argument('--plot', help='Also render the three-panel figure to this PNG path')
    sweep_flags.add_argument('--pdf', help='Also render a PDF report to this path')

    commands = parser.add_subparsers(dest='command', required=True)
    commands.add_parser('fig2', parents=[sweep_flags],
                        help='Entropy production under different bath temperatures')
    commands.add_parser('fig3', parents=[sweep_flags],
                        help='Entropy production under different initial coherences')
    sweep = commands.add_parser('sweep', parents=[sweep_flags], help='Sweep described by a config file')
    sweep.add_argument('--config', required=True, help='Flat KEY=value sweep file')
    check = commands.add_parser('check', help='Run the property suite')
    check.add_argument('--seed', type=int, help=f"Master seed (default: {Config.PROPERTY_SEED})")
    return parser


def load_sweep_config(args: argparse.Namespace) -> SweepConfig:
    if args.command == 'sweep':
        return SweepConfig.from_file(args.config, shots=args.shots, n_bootstrap=args.bootstrap,
                                     seed=args.seed, output_path=args.out, r_points=args.r_points)
    return SweepConfig.for_scenario(args.command, r_points=args.r_points, shots=args.shots,
                                    n_bootstrap=args.bootstrap, seed=args.seed, output_path=args.out)


def run_sweep_command(args: argparse.Namespace) -> int:
    config = load_sweep_config(args)
    rows = run_sweep(config)
    emit_csv(rows, config.output_path)
    write_metadata(config, rows, config.output_path)
    print(emit_summary(rows))

    if args.plot or args.pdf:
        report = ReportGenerator(config, rows)
        if args.plot:
            report.plot_sweep(args.plot)
        if args.pdf:
            report.generate_pdf_report(args.pdf, figure_path=args.plot)
    return EXIT_OK


def run_check_command(args: argparse.Namespace) -> int:
    report = run_property_suite(args.seed)
    print(report.as_text())
    if not report.passed:
        logger.warning(f"{len(report.failures)} property checks failed")
        return EXIT_PROPERTY_FAILURE
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.log_level:
        setup_logger(__name__, args.log_level)

    try:
        if args.command == 'check':
            return run_check_command(args)
        return run_sweep_command(args)
    except (ConfigInvalidError, ParameterOutOfRangeError) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_USAGE
    except ConsistencyError as e:
        logger.error(f"Consistency failure: {e}")
        return EXIT_PROPERTY_FAILURE
    except OSError as e:
        logger.error(f"I/O failure: {e}")
        return EXIT_IO


if __name__ == '__main__':
    sys.exit(main())
