"""Batch figure rendering from sweep CSVs.

Usage: figures --job <id> --in <csv> --out <image> [--format png|svg]
Exit codes: 0 success, 1 schema/validation error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import __version__
from .render import FIGURES, FigureJob, render
from .schema import MissingDataError, SchemaError


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figures", description="Render plots from fringelab sweep CSVs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--job", required=True, choices=FIGURES)
    parser.add_argument("--in", dest="input_csv", required=True, metavar="CSV")
    parser.add_argument("--out", dest="output_image", required=True, metavar="IMAGE")
    parser.add_argument("--format", dest="image_format", choices=("png", "svg"),
                        default="png")
    parser.add_argument("--no-reference-lines", action="store_true")
    parser.add_argument("--linear-axes", action="store_true")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    job = FigureJob(figure=args.job, input_csv=args.input_csv,
                    output_image=args.output_image, image_format=args.image_format,
                    log_axes=not args.linear_axes,
                    reference_lines=not args.no_reference_lines)
    info = render(job)
    print(f"figures: wrote {args.output_image} "
          f"({sum(info.series_points.values())} plotted points)")
    return 0


def entry() -> None:
    try:
        code = main()
    except (SchemaError, MissingDataError) as exc:
        print(f"figures: error: {exc}", file=sys.stderr)
        code = 1
    except OSError as exc:
        print(f"figures: i/o error: {exc}", file=sys.stderr)
        code = 3
    sys.exit(code)


if __name__ == "__main__":
    entry()
