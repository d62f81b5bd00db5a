#!/usr/bin/env python3
"""Paired posterior log-odds scatter with the identity diagonal."""

import argparse
import sys

from figspec import FigureDataError, FigureSpec, render


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="input_path", required=True)
    ap.add_argument("--out", dest="output_path", required=True)
    ap.add_argument("--title", default=None)
    args = ap.parse_args(argv)
    spec = FigureSpec(args.input_path, "scatter", args.output_path,
                      title=args.title)
    try:
        facts = render(spec)
    except (FigureDataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{facts['below_diagonal']} of {facts['n_rows']} points below the "
          f"diagonal ({facts['ties']} ties)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
