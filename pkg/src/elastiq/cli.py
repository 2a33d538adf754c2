"""Command-line surface: fit, tests, simulate, replicate, average, figure.

Reports go to stdout unless --out names a file or the ELASTIQ_OUT_DIR
environment variable names a default output directory.  Exit codes: 0 on
success, 2 for input problems, 3 for infeasible requests, 4 for internal
failures.
"""
from __future__ import annotations

import argparse
import os
import re
import sys
from typing import Optional

from . import io
from .errors import (
    ClosedFormInvalidError,
    DegenerateGeometryError,
    DegenerateTableError,
    ElastiqError,
    EmptySupportError,
    GaugeInfeasibleError,
    InfeasibleGeometryError,
    InputValidationError,
    NormalizationRefusedError,
)
from .inverse import Gauge

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_INTERNAL = 4

OUT_DIR_ENV = "ELASTIQ_OUT_DIR"

_INPUT_ERRORS = (
    InputValidationError,
    NormalizationRefusedError,
    DegenerateTableError,
    FileNotFoundError,
    IsADirectoryError,
    PermissionError,
)
_INFEASIBLE_ERRORS = (
    GaugeInfeasibleError,
    InfeasibleGeometryError,
    DegenerateGeometryError,
    EmptySupportError,
    ClosedFormInvalidError,
)


def _slug(label: str) -> str:
    slug = re.sub(r"[^a-z0-9]+", "-", label.lower()).strip("-")
    return slug or "report"


def _add_common(parser: argparse.ArgumentParser, gauge: bool) -> None:
    parser.add_argument("--input", required=True, help="path to the input JSON file")
    if gauge:
        parser.add_argument(
            "--gauge",
            required=True,
            help="free-parameter choice: eps-a=<v>, eps-b=<v>, or cos-theta=<v>",
        )
    parser.add_argument(
        "--exact",
        action="store_true",
        help="exact rational arithmetic (reports fractions instead of floats)",
    )
    parser.add_argument("--out", help="output file (default: stdout or $ELASTIQ_OUT_DIR)")
    parser.add_argument(
        "--format",
        choices=("json", "csv"),
        default="json",
        help="report format (default json)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elastiq",
        description=(
            "Elastic-band measurement model: fit sequential yes/no probability "
            "tables, test them against quantum equalities, and simulate them."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="invert a table into model parameters")
    _add_common(p, gauge=True)

    p = sub.add_parser("tests", help="parameter-free quantum equalities of a table")
    _add_common(p, gauge=False)

    p = sub.add_parser("simulate", help="seeded Monte Carlo check of a fitted model")
    _add_common(p, gauge=True)
    p.add_argument("--trials", type=int, default=1_000_000, help="trials per order")
    p.add_argument("--seed", type=int, default=42, help="random seed")

    p = sub.add_parser("replicate", help="outcome tree of a measurement sequence")
    _add_common(p, gauge=False)

    p = sub.add_parser("average", help="ensemble average and effective refit")
    _add_common(p, gauge=True)

    p = sub.add_parser("figure", help="elastic-band geometry as CSV plus SVG")
    p.add_argument("--input", required=True, help="path to the input JSON file")
    p.add_argument(
        "--gauge",
        required=True,
        help="free-parameter choice: eps-a=<v>, eps-b=<v>, or cos-theta=<v>",
    )
    p.add_argument("--exact", action="store_true", help="exact rational arithmetic")
    p.add_argument("--out", help="output base path; writes <base>.csv and <base>.svg")

    return parser


def _out_path(explicit: Optional[str], default_name: str) -> Optional[str]:
    if explicit:
        return explicit
    out_dir = os.environ.get(OUT_DIR_ENV)
    if out_dir:
        return os.path.join(out_dir, default_name)
    return None


def _emit(report: dict, args: argparse.Namespace, default_stem: str) -> int:
    text = io.report_to_json(report) if args.format == "json" else io.report_to_csv(report)
    path = _out_path(args.out, f"{default_stem}.{args.format}")
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def _cmd_fit(args: argparse.Namespace) -> int:
    survey = io.load_survey(args.input)
    gauge = Gauge.parse(args.gauge, exact=args.exact)
    report = io.fit_report(survey, gauge, exact=args.exact)
    return _emit(report, args, f"fit_{_slug(survey.label)}")


def _cmd_tests(args: argparse.Namespace) -> int:
    survey = io.load_survey(args.input)
    report = io.tests_report(survey, exact=args.exact)
    return _emit(report, args, f"tests_{_slug(survey.label)}")


def _cmd_simulate(args: argparse.Namespace) -> int:
    survey = io.load_survey(args.input)
    gauge = Gauge.parse(args.gauge, exact=args.exact)
    report = io.simulate_report(
        survey, gauge, trials=args.trials, seed=args.seed, exact=args.exact
    )
    return _emit(report, args, f"simulate_{_slug(survey.label)}")


def _cmd_replicate(args: argparse.Namespace) -> int:
    data, digest = io.load_json(args.input)
    report = io.replicate_report(data, exact=args.exact, sha256=digest)
    return _emit(report, args, f"replicate_{_slug(report['label'])}")


def _cmd_average(args: argparse.Namespace) -> int:
    data, digest = io.load_json(args.input)
    gauge = Gauge.parse(args.gauge, exact=args.exact)
    report = io.average_report(data, gauge, exact=args.exact, sha256=digest)
    return _emit(report, args, f"average_{_slug(report['label'])}")


def _cmd_figure(args: argparse.Namespace) -> int:
    survey = io.load_survey(args.input)
    gauge = Gauge.parse(args.gauge, exact=args.exact)
    csv_text, svg_text = io.figure_outputs(survey, gauge, exact=args.exact)
    base = args.out
    if base and (base.endswith(".csv") or base.endswith(".svg")):
        base = base[:-4]
    if not base:
        default = f"figure_{_slug(survey.label)}"
        out_dir = os.environ.get(OUT_DIR_ENV)
        base = os.path.join(out_dir, default) if out_dir else default
    for suffix, text in ((".csv", csv_text), (".svg", svg_text)):
        with open(base + suffix, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {base}{suffix}", file=sys.stderr)
    return EXIT_OK


_HANDLERS = {
    "fit": _cmd_fit,
    "tests": _cmd_tests,
    "simulate": _cmd_simulate,
    "replicate": _cmd_replicate,
    "average": _cmd_average,
    "figure": _cmd_figure,
}


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except _INFEASIBLE_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except _INPUT_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except (ElastiqError, AssertionError) as err:
        print(f"internal error: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as err:  # pragma: no cover - last-resort mapping
        print(f"internal error: {err!r}", file=sys.stderr)
        return EXIT_INTERNAL


def entry_point() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
