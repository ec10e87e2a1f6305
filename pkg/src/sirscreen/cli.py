"""Command-line interface.

Exit codes: 0 success, 2 bad configuration or input, 3 numerical failure,
4 baseline prevalence of zero.
"""

from __future__ import annotations

import argparse
import sys
import warnings

from . import report
from .errors import DegeneratePpv, InvalidBaseline, NumericalError, ValidationError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_BASELINE = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat TOML scenario file")
    common.add_argument("--out", metavar="PATH", help="output file (directory for plotdata)")

    test_flags = argparse.ArgumentParser(add_help=False)
    test_flags.add_argument("--a", type=float, help="sensitivity; overrides the scenario")
    test_flags.add_argument("--b", type=float, help="specificity; overrides the scenario")

    parser = _Parser(
        prog="sirscreen",
        description="SIR epidemic simulation with screening-test predictive value analytics.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser(
        "simulate", parents=[common], help="integrate the SIR model and write week,susceptible,infected,recovered"
    )
    p = sub.add_parser(
        "analyze", parents=[common, test_flags], help="write the PPV / zeta / serial-test report (reference-table layout)"
    )
    p.add_argument("--infected-csv", metavar="PATH", help="read compartments from CSV instead of simulating")
    sub.add_parser("threshold", parents=[common, test_flags], help="print prevalence threshold, J and PPV there")
    sub.add_parser("plotdata", parents=[common, test_flags], help="write compartments.csv and screening.csv")
    return parser


def _scenario(args):
    if args.config:
        scenario = report.load_scenario(args.config)
    else:
        scenario = report.Scenario()
    return scenario.with_test(getattr(args, "a", None), getattr(args, "b", None))


def _run(args):
    scenario = _scenario(args)
    if args.command == "simulate":
        path, side = report.run_simulate(scenario, args.out)
        print(f"wrote {path} and {side}", file=sys.stderr)
    elif args.command == "analyze":
        path = report.run_analyze(scenario, args.out, infected_csv=args.infected_csv)
        print(f"wrote {path}", file=sys.stderr)
    elif args.command == "threshold":
        test = scenario.require_test()
        sys.stdout.write(report.threshold_report(test))
    elif args.command == "plotdata":
        scenario.require_test()
        paths = report.run_plotdata(scenario, args.out)
        print("wrote " + " and ".join(map(str, paths)), file=sys.stderr)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            _run(args)
            code = EXIT_OK
        except InvalidBaseline as exc:
            print(f"error: {exc}", file=sys.stderr)
            code = EXIT_BASELINE
        except ValidationError as exc:
            print(f"error: {exc}", file=sys.stderr)
            code = EXIT_INPUT
        except (NumericalError, DegeneratePpv) as exc:
            print(f"error: {exc}", file=sys.stderr)
            code = EXIT_NUMERIC
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
