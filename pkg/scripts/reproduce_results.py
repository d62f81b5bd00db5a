#!/usr/bin/env python3
"""Regenerate the experiment CSVs consumed by the figure scripts.

Writes into a results directory (default ./results):
  fable_sweep_<preset>.csv   one per preference preset
  fable_learn.csv            paired posterior log-odds samples
  mistakes.csv               the flawed-model comparison table
  sailing_theta_<size>.csv   posterior of the policy parameter
  sailing_costs.csv          travel-cost matrix (inferred/greedy/optimal)

The default profile keeps the sailing runs at size 25; --full adds sizes 50
and 100 (slow: full-size inference takes tens of minutes).  --fast shrinks
the sample counts for a quick end-to-end pass.
"""

import argparse
import pathlib
import sys

from prefplan.cli import main as cli
from prefplan.fable import PRESETS


def run(argv):
    code = cli(argv)
    if code != 0:
        sys.exit(code)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--results", default="results")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--fast", action="store_true", help="small sample counts")
    ap.add_argument("--full", action="store_true",
                    help="also run sailing sizes 50 and 100 (slow)")
    args = ap.parse_args()
    out = pathlib.Path(args.results)
    out.mkdir(parents=True, exist_ok=True)

    iters = "1000" if args.fast else "5000"
    samples = "500" if args.fast else "10000"
    rollouts = "1000" if args.fast else "10000"
    sizes = "25,50,100" if args.full else "25"

    for preset in sorted(PRESETS):
        run(["fable", "sweep", "--preset", preset, "--depth", "10",
             "--iters", iters, "--seed", str(args.seed),
             "--out", str(out / f"fable_sweep_{preset}.csv")])
    run(["fable", "learn", "--samples", "100", "--seed", str(args.seed),
         "--out", str(out / "fable_learn.csv")])
    run(["mistakes", "--seed", str(args.seed),
         "--out", str(out / "mistakes.csv")])
    run(["sailing", "infer", "--size", "25", "--samples", samples,
         "--seed", str(args.seed), "--out", str(out / "sailing_theta_25.csv")]
        + (["--smoke"] if args.fast else []))
    run(["sailing", "table", "--sizes", sizes, "--rollouts", rollouts,
         "--samples", samples, "--seed", str(args.seed),
         "--out", str(out / "sailing_costs.csv")]
        + (["--smoke"] if args.fast else []))
    print(f"results written to {out}/")


if __name__ == "__main__":
    main()
