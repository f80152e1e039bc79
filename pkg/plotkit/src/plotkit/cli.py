"""Command line front end: render --job <job.json>.

Exit codes: 0 success, 2 invalid job or missing column, 5 I/O error,
6 malformed job JSON or CSV.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .errors import InvalidJob, IoError, MissingColumn, ParseError, PlotkitError
from .job import load_job
from .render import render

EXIT_OK = 0
EXIT_JOB = 2
EXIT_IO = 5
EXIT_PARSE = 6


def cmd_render(args) -> int:
    job = load_job(args.job)
    path = render(job)
    print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotkit",
        description="Deterministic multi-panel line plots from sweep CSV files",
    )
    parser.add_argument("--version", action="version", version=f"plotkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_render = sub.add_parser("render", help="render a plot job to an image file")
    p_render.add_argument("--job", required=True, help="job JSON document")
    p_render.set_defaults(func=cmd_render)
    return parser


_EXIT_BY_ERROR = (
    (IoError, EXIT_IO),
    (ParseError, EXIT_PARSE),
    ((InvalidJob, MissingColumn), EXIT_JOB),
)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PlotkitError as exc:
        print(f"plotkit: error: {exc}", file=sys.stderr)
        for error_types, code in _EXIT_BY_ERROR:
            if isinstance(exc, error_types):
                return code
        return EXIT_JOB


if __name__ == "__main__":
    sys.exit(main())
