#!/usr/bin/env python3
"""Aligned-text travel-cost comparison table (policies by lake sizes)."""

import argparse
import sys

from figspec import FigureDataError, FigureSpec, render


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="input_path", required=True)
    ap.add_argument("--out", dest="output_path", required=True)
    ap.add_argument("--title", default=None)
    args = ap.parse_args(argv)
    spec = FigureSpec(args.input_path, "table", args.output_path,
                      title=args.title)
    try:
        render(spec)
    except (FigureDataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
