"""CLI: `duel-figures render --kind <k> --in <csv> --out <img>`."""

from __future__ import annotations

import argparse
import sys

from .render import render
from .specs import KINDS, FigureSpec, SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="duel-figures", allow_abbrev=False,
        description="Render simulation CSVs into figures")
    sub = parser.add_subparsers(dest="command", required=True)
    r = sub.add_parser("render", allow_abbrev=False)
    r.add_argument("--kind", choices=KINDS, required=True)
    r.add_argument("--in", dest="input_path", required=True, metavar="CSV")
    r.add_argument("--out", dest="output_path", required=True, metavar="IMG")
    r.add_argument("--xlabel")
    r.add_argument("--ylabel")
    r.add_argument("--title")
    r.add_argument("--column",
                   help="surface: value column (default a); "
                        "level_curves: metric, influenced|supporter "
                        "(default supporter)")
    r.add_argument("--style", help="matplotlib style file")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(kind=args.kind, input_path=args.input_path,
                      output_path=args.output_path, xlabel=args.xlabel,
                      ylabel=args.ylabel, title=args.title,
                      column=args.column, style=args.style)
    try:
        path = render(spec)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
