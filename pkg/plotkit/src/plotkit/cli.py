"""Render a figure from dlpad CSV tables.

usage examples:
  plotkit --in collapse.csv --kind collapse --out collapse.png
  plotkit --in cumulants_a.csv --in cumulants_b.csv --kind cumulant_growth --out growth.svg

Exit status: 0 written, 1 input rejected (missing file, wrong schema, empty
table), 2 usage error.
"""

import argparse
import sys

from .figures import KINDS, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotkit",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--in",
        dest="inputs",
        action="append",
        required=True,
        metavar="CSV",
        help="input CSV produced by the dlpad CLI (repeat to pool several tables)",
    )
    parser.add_argument("--kind", choices=KINDS, required=True, help="figure kind")
    parser.add_argument("--out", required=True, help="output image path (.png or .svg)")
    parser.add_argument("--x-label", default=None, help="override the x axis label")
    parser.add_argument("--y-label", default=None, help="override the y axis label")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = FigureSpec(
            inputs=tuple(args.inputs),
            kind=args.kind,
            output=args.out,
            x_label=args.x_label,
            y_label=args.y_label,
        )
    except ValueError as exc:
        parser.error(str(exc))
    try:
        path = render(spec)
    except (OSError, ValueError) as exc:
        print(f"plotkit: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
