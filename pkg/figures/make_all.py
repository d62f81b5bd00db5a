#!/usr/bin/env python3
"""Reproduce every exhibit from a results directory of CLI CSVs.

File-name conventions (as written by scripts/reproduce_results.py):
  fable_sweep_<preset>.csv -> <preset>_depth_curves.svg
  fable_learn*.csv         -> learning_scatter.svg
  sailing_theta*.csv       -> theta_histogram.svg
  sailing_costs*.csv       -> travel_cost_table.txt
"""

import argparse
import pathlib
import sys

from figspec import FigureDataError, FigureSpec, render


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--results", required=True)
    ap.add_argument("--out", required=True)
    args = ap.parse_args(argv)
    results = pathlib.Path(args.results)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    jobs = []
    for path in sorted(results.glob("fable_sweep_*.csv")):
        preset = path.stem.removeprefix("fable_sweep_")
        jobs.append(FigureSpec(str(path), "depth-curves",
                               str(out / f"{preset}_depth_curves.svg"),
                               title=preset))
    for path in sorted(results.glob("fable_learn*.csv")):
        jobs.append(FigureSpec(str(path), "scatter",
                               str(out / "learning_scatter.svg")))
    for path in sorted(results.glob("sailing_theta*.csv")):
        jobs.append(FigureSpec(str(path), "histogram",
                               str(out / "theta_histogram.svg")))
    for path in sorted(results.glob("sailing_costs*.csv")):
        jobs.append(FigureSpec(str(path), "table",
                               str(out / "travel_cost_table.txt")))
    if not jobs:
        print(f"error: no recognised result files in {results}", file=sys.stderr)
        return 2
    for spec in jobs:
        try:
            render(spec)
        except (FigureDataError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        print(f"{spec.input_path} -> {spec.output_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
