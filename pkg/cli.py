# cli.py
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

import config
from main import LipkinSweepRunner
from models.lipkin_params import LipkinModel, SweepConfig
from src.errors import LipkinError
from src.figures import FIGURE_MODELS, default_figure_config, emit_figure
from src.utils import load_records_csv
from validators.oracle_check import OracleCheck

logger = logging.getLogger(__name__)


def _particle_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lipkin",
                                     description="Exact, Hartree-Fock and correlation analysis of the Lipkin models")
    parser.add_argument('--silent', '-s', action='store_true', help="Only warnings and errors")
    commands = parser.add_subparsers(dest="command", required=True)

    sweep = commands.add_parser("sweep", help="Run a chi-sweep and write it to CSV")
    sweep.add_argument('--model', choices=[m.value for m in LipkinModel], required=True, help="two- or three-level")
    sweep.add_argument('--particles', type=_particle_list, required=True, help="N values, e.g. 5,10,20")
    sweep.add_argument('--chi-min', type=float, required=True, help="Lower end of the chi grid")
    sweep.add_argument('--chi-max', type=float, required=True, help="Upper end of the chi grid")
    sweep.add_argument('--steps', type=int, default=config.DEFAULT_GRID_STEPS, help="Number of chi points")
    sweep.add_argument('--log-grid', action='store_true', help="Log-spaced chi grid")
    sweep.add_argument('--epsilon', type=float, default=config.DEFAULT_EPSILON, help="Level spacing")
    sweep.add_argument('--out', required=True, help="CSV output path")
    sweep.add_argument('--workers', type=int, default=None, help="Worker threads (default LIPKIN_WORKERS)")
    sweep.add_argument('--summary', action='store_true', help="Print extremes and detected transitions")

    figure = commands.add_parser("figure", help="Draw one of the figures f1..f8 as SVG")
    figure.add_argument('figure_id', choices=sorted(FIGURE_MODELS), help="f1-f4 two-level, f5-f8 three-level")
    figure.add_argument('--out', required=True, help="SVG output path")
    figure.add_argument('--from-csv', default=None, help="Use an existing sweep instead of running the default one")
    figure.add_argument('--steps', type=int, default=None, help="Grid points of the default sweep")
    figure.add_argument('--csv-out', default=None, help="Also save the default sweep to this CSV")
    figure.add_argument('--workers', type=int, default=None, help="Worker threads (default LIPKIN_WORKERS)")

    commands.add_parser("check", help="Run the analytic-oracle self-test suite")
    return parser


def _run_sweep(args) -> int:
    sweep = SweepConfig(model=LipkinModel(args.model), particles=args.particles, chi_min=args.chi_min,
                        chi_max=args.chi_max, steps=args.steps, log_grid=args.log_grid,
                        epsilon=args.epsilon, output_path=args.out)
    runner = LipkinSweepRunner(max_workers=args.workers)
    runner.run_sweep(sweep)
    if args.summary:
        runner.print_summary()
    print(f"\n🎉 Sweep written to {args.out}")
    return 0


def _run_figure(args) -> int:
    if args.from_csv:
        records = load_records_csv(args.from_csv)
        model = FIGURE_MODELS[args.figure_id]
        records = [record for record in records if record.model is model]
    else:
        runner = LipkinSweepRunner(max_workers=args.workers)
        records = runner.run_sweep(default_figure_config(args.figure_id, args.steps, args.csv_out))
    emit_figure(args.figure_id, records, args.out)
    print(f"\n🎉 Figure {args.figure_id} written to {args.out}")
    return 0


def _run_check(args) -> int:
    checker = OracleCheck()
    checker.run_all_tests()
    return 0 if checker.all_passed() else 1


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=getattr(logging, config.LOG_LEVEL, logging.INFO),
                        format='%(asctime)s - %(levelname)s - %(message)s')
    args = build_parser().parse_args(argv)
    if args.silent:
        logging.getLogger().setLevel(logging.WARNING)

    handlers = {"sweep": _run_sweep, "figure": _run_figure, "check": _run_check}
    try:
        return handlers[args.command](args)
    except KeyboardInterrupt:
        print("\n⏹️ Interrupted by user")
        return 130
    except (LipkinError, ValidationError, OSError) as e:
        logger.error(f"❌ {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
