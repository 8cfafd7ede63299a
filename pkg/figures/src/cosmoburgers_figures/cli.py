"""CLI: render a single figure spec or a whole run directory."""

from __future__ import annotations

import argparse
import sys

from .csvio import CsvFormatError
from .render import load_spec, render, render_suite


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figures", description="Render cosmoburgers outputs as figures"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_render = sub.add_parser("render", help="render one figure from a JSON spec")
    p_render.add_argument("--spec", required=True, help="path to a FigureSpec JSON file")

    p_suite = sub.add_parser("suite", help="render every snapshot of a run directory")
    p_suite.add_argument("--dir", required=True, help="directory holding manifest.json")
    p_suite.add_argument("--out", help="image output directory (default DIR/figures)")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "render":
            out = render(load_spec(args.spec))
            print(f"wrote {out}")
        else:
            outputs = render_suite(args.dir, args.out)
            print(f"wrote {len(outputs)} files, index at {outputs[-1]}")
        return 0
    except (CsvFormatError, FileNotFoundError, ValueError, KeyError) as exc:
        print(f"figures error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
