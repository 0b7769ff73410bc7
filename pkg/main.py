# ---- File: main.py ----

import argparse
import logging
import sys
from typing import List, Optional, TextIO

from pydantic import ValidationError

logger = logging.getLogger(__name__)

SUBCOMMANDS = ("validate", "betti", "invariant", "harmonic", "formality", "nilpotency", "abstract", "catalog")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invform",
        description="Invariant forms, Betti numbers, harmonic forms and geometric formality of homogeneous spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        if name == "catalog":
            p.add_argument("spec", nargs="?", default=None, help="Output directory for the bundled spec files")
        else:
            p.add_argument("spec", help="Spec file, or the name of a bundled space / table")
        p.add_argument("--degree", type=int, default=None)
        p.add_argument("--power", type=int, default=2)
        p.add_argument("--basis", choices=("closed", "invariant"), default="closed",
                       help="Coordinates of the generic form in nilpotency runs")
        p.add_argument("--set", action="append", default=[], metavar="NAME=P/Q",
                       help="Specialize a metric parameter; repeatable")
        p.add_argument("--parametric", action="store_true", help="Report parametric obstructions instead of a verdict")
        p.add_argument("--max-degree", type=int, default=None)
        p.add_argument("--check-samples", type=int, nargs="?", const=None, default=0, metavar="N",
                       help="Compare harmonic dimensions with Betti numbers at N random metrics (INVFORM_METRIC_SAMPLES when N is omitted)")
        p.add_argument("--strict", action="store_true", help="Exit 1 on negative verdicts")
        p.add_argument("--output", default=None, help="Write the report here instead of standard output")
    return parser


def configure_logging(level: str) -> None:
    # Logs go to standard error; standard output carries the report only
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='[%(asctime)s] [%(levelname)s] [%(filename)s:%(lineno)d] %(message)s',
        stream=sys.stderr,
    )


def run_command(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """Parse argv, run the subcommand and write the report. Returns the exit code."""
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        from config import settings
    except ValidationError as exc:
        print(f"Invalid INVFORM_* configuration: {exc}", file=err)
        return 2
    configure_logging(settings.log_level)

    # Imported after the settings are known to be valid
    from commands import dispatch
    from errors import InvformError
    from spec_io import emit_report
    from utils import create_error_json, error_json

    args.summary = err
    try:
        report, negative = dispatch(args)
    except InvformError as exc:
        logger.error(f"{args.command} failed: [{exc.code}] {exc.message}")
        print(error_json(exc), file=out)
        return 2
    except Exception as exc:
        logger.exception(f"Unexpected error in {args.command}: {exc}")
        print(create_error_json(f"Internal error: {exc}", code="internal"), file=out)
        return 2

    text = emit_report(report, args.output)
    if not args.output:
        out.write(text)
    if negative and args.strict:
        return 1
    return 0


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
