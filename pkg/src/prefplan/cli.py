"""Command-line interface: reproducible, CSV-emitting subcommands.

Every run is fully determined by its arguments; rerunning with the same
arguments reproduces the output byte for byte.  CSV files start with a
metadata comment line carrying the version, the subcommand, the full
parameter set, and the seed; the JSON format carries the same metadata as an
embedded object so the file stays valid JSON.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .fable import (AgentPreferences, PRESETS, analytical_choice,
                    infer_meeting_preference, mc_sweep)
from .mistakes import future_as_present_report, single_sample_nesting_policy
from .sailing import (CostTable, LakeSpec, WindModel, evaluate_inferred,
                      evaluate_policy, infer_theta, make_greedy_policy,
                      make_optimal_policy, optimal_expected_cost)

__all__ = ["main", "entry"]


class UsageError(ValueError):
    pass


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _emit(subcommand, params, columns, rows, fmt, out):
    meta = [("prefplan", __version__), ("subcommand", subcommand)] + list(params)
    if fmt == "csv":
        lines = ["# " + " ".join(f"{k}={_fmt(v)}" for k, v in meta)]
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        doc = {"meta": {k: v for k, v in meta},
               "columns": list(columns),
               "rows": [list(r) for r in rows]}
        text = json.dumps(doc, sort_keys=True) + "\n"
    elif fmt == "text":
        widths = [max(len(c), max((len(_fmt(r[i])) for r in rows), default=0))
                  for i, c in enumerate(columns)]
        lines = ["# " + " ".join(f"{k}={_fmt(v)}" for k, v in meta)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(columns, widths)))
        for row in rows:
            lines.append("  ".join(_fmt(v).ljust(w) for v, w in zip(row, widths)))
        text = "\n".join(lines) + "\n"
    else:
        raise UsageError(f"unknown format {fmt!r}")
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _resolve_agents(args):
    explicit = [args.p1a, args.pma, args.p1b, args.pmb]
    if args.preset is not None:
        if args.preset not in PRESETS:
            raise UsageError(f"unknown preset {args.preset!r}; choose from "
                             f"{', '.join(sorted(PRESETS))}")
        return PRESETS[args.preset]
    if any(v is None for v in explicit):
        raise UsageError("give --preset or all of --p1a/--pma/--p1b/--pmb")
    try:
        return (AgentPreferences("alice", args.p1a, args.pma),
                AgentPreferences("bob", args.p1b, args.pmb))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _cmd_fable_sweep(args):
    alice, bob = _resolve_agents(args)
    params = [("preset", args.preset or "custom"),
              ("p1a", alice.p1), ("pma", alice.pm),
              ("p1b", bob.p1), ("pmb", bob.pm),
              ("depth", args.depth), ("iters", args.iters), ("seed", args.seed)]
    rows = []
    for d in range(args.depth + 1):
        rows.append((alice.name, d, analytical_choice(alice, bob, d).p_first,
                     "analytical", "", args.seed))
    mc_a, mc_b = mc_sweep(alice, bob, args.depth, n_iters=args.iters, seed=args.seed)
    for d in range(args.depth + 1):
        rows.append((alice.name, d, mc_a[d].p_first, "monte-carlo",
                     mc_a[d].stderr, args.seed))
    for d in range(args.depth + 1):
        rows.append((bob.name, d, analytical_choice(bob, alice, d).p_first,
                     "analytical", "", args.seed))
    for d in range(args.depth + 1):
        rows.append((bob.name, d, mc_b[d].p_first, "monte-carlo",
                     mc_b[d].stderr, args.seed))
    _emit("fable-sweep", params,
          ("agent", "depth", "p_first", "method", "stderr", "seed"),
          rows, args.format, args.out)
    return 0


def _cmd_fable_learn(args):
    if args.observations < 1:
        raise UsageError("--observations must be >= 1")
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    try:
        me = AgentPreferences("alice", args.p1a, args.pma)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    params = [("p1a", me.p1), ("pma", me.pm), ("observations", args.observations),
              ("depth", args.depth), ("samples", args.samples),
              ("prior_scale", args.prior_scale), ("seed", args.seed)]
    seeds = np.random.SeedSequence(args.seed).generate_state(2)
    beliefs = []
    for bar, s in ((1, seeds[0]), (2, seeds[1])):
        beliefs.append(infer_meeting_preference(
            me, [bar] * args.observations, my_choice_model_depth=args.depth,
            prior=(0.0, args.prior_scale), n_samples=args.samples, seed=int(s)))
    rows = [(i, a, b) for i, (a, b) in enumerate(
        zip(beliefs[0].log_odds_samples, beliefs[1].log_odds_samples))]
    _emit("fable-learn", params, ("pair", "scenario_bar1", "scenario_bar2"),
          rows, args.format, args.out)
    return 0


def _cmd_mistakes(args):
    try:
        reports = [future_as_present_report(args.p1, args.q_hat),
                   single_sample_nesting_policy(args.evader_p1, args.chaser_p1)]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    params = [("p1", args.p1), ("q_hat", args.q_hat),
              ("evader_p1", args.evader_p1), ("chaser_p1", args.chaser_p1),
              ("seed", args.seed)]
    rows = [(r.model_name, r.p_bar1, r.p_bar2, r.claimed_value, r.true_value,
             r.rational_value) for r in reports]
    _emit("mistakes", params,
          ("model", "p_bar1", "p_bar2", "claimed_value", "true_value", "rational_value"),
          rows, args.format, args.out)
    return 0


def _lake(args):
    try:
        return LakeSpec(args.size)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _cmd_sailing_infer(args):
    lake = _lake(args)
    if args.samples < 1 or args.inner < 1 or args.scale <= 0:
        raise UsageError("--samples and --inner must be >= 1, --scale positive")
    n_inner = 4 if args.smoke else args.inner
    chain = infer_theta(lake, WindModel(), CostTable(), n_samples=args.samples,
                        n_inner=n_inner, proposal_scale=args.scale, seed=args.seed)
    params = [("size", args.size), ("samples", args.samples), ("inner", n_inner),
              ("scale", args.scale), ("smoke", args.smoke), ("seed", args.seed),
              ("acceptance_rate", chain.acceptance_rate)]
    rows = [(i, math.exp(v)) for i, v in enumerate(chain.values)]
    _emit("sailing-infer", params, ("index", "theta"), rows, args.format, args.out)
    return 0


def _sailing_eval_row(policy_name, lake, n_rollouts, n_samples, seed,
                      point_estimate, smoke):
    wind, costs = WindModel(), CostTable()
    if policy_name == "greedy":
        res = evaluate_policy(make_greedy_policy(lake, costs), lake, wind, costs,
                              n_rollouts=n_rollouts, seed=seed)
    elif policy_name == "optimal":
        res = evaluate_policy(make_optimal_policy(lake, wind, costs), lake, wind,
                              costs, n_rollouts=n_rollouts, seed=seed)
    elif policy_name == "inferred":
        chain = infer_theta(lake, wind, costs, n_samples=n_samples,
                            n_inner=4 if smoke else 20, seed=seed)
        res = evaluate_inferred([math.exp(v) for v in chain.values], lake, wind,
                                costs, n_rollouts=n_rollouts, seed=seed,
                                point_estimate=point_estimate)
    else:
        raise UsageError(f"unknown policy {policy_name!r}")
    return (policy_name, lake.size, res.mean_cost, res.stderr, res.n_rollouts)


def _cmd_sailing_eval(args):
    lake = _lake(args)
    if args.rollouts < 100 or args.samples < 1:
        raise UsageError("--rollouts must be >= 100 and --samples >= 1")
    params = [("policy", args.policy), ("size", args.size),
              ("rollouts", args.rollouts), ("samples", args.samples),
              ("point_estimate", args.point_estimate), ("smoke", args.smoke),
              ("seed", args.seed)]
    row = _sailing_eval_row(args.policy, lake, args.rollouts, args.samples,
                            args.seed, args.point_estimate, args.smoke)
    _emit("sailing-eval", params,
          ("policy", "size", "mean_cost", "stderr", "n_rollouts"),
          [row], args.format, args.out)
    return 0


def _cmd_sailing_table(args):
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s]
    except ValueError as exc:
        raise UsageError(f"bad --sizes value: {exc}") from exc
    if not sizes:
        raise UsageError("--sizes must name at least one lake size")
    if args.rollouts < 100 or args.samples < 1:
        raise UsageError("--rollouts must be >= 100 and --samples >= 1")
    params = [("sizes", args.sizes), ("rollouts", args.rollouts),
              ("samples", args.samples), ("smoke", args.smoke), ("seed", args.seed)]
    rows = []
    for size in sizes:
        try:
            lake = LakeSpec(size)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        seed = int(np.random.SeedSequence((args.seed, size)).generate_state(1)[0])
        rows.append(_sailing_eval_row("inferred", lake, args.rollouts,
                                      args.samples, seed, False, args.smoke))
        rows.append(_sailing_eval_row("greedy", lake, args.rollouts, args.samples,
                                      seed, False, args.smoke))
        rows.append(("optimal", size, optimal_expected_cost(lake), 0.0, 0))
    _emit("sailing-table", params,
          ("policy", "size", "mean_cost", "stderr", "n_rollouts"),
          rows, args.format, args.out)
    return 0


def _add_common(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    p.add_argument("--out", default=None, help="output path (default: stdout)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="prefplan",
        description="Planning as Bayesian inference with probabilistic preferences")
    sub = parser.add_subparsers(dest="command", required=True)

    fable = sub.add_parser("fable", help="the two-bar coordination fable")
    fsub = fable.add_subparsers(dest="fable_command", required=True)
    sweep = fsub.add_parser("sweep", help="choice posteriors over deliberation depths")
    sweep.add_argument("--preset", default=None,
                       help=f"one of: {', '.join(sorted(PRESETS))}")
    for flag in ("--p1a", "--pma", "--p1b", "--pmb"):
        sweep.add_argument(flag, type=float, default=None)
    sweep.add_argument("--depth", type=int, default=10)
    sweep.add_argument("--iters", type=int, default=5000)
    _add_common(sweep)
    sweep.set_defaults(func=_cmd_fable_sweep)

    learn = fsub.add_parser("learn", help="infer the other agent's meeting preference")
    learn.add_argument("--p1a", type=float, default=0.55)
    learn.add_argument("--pma", type=float, default=0.9)
    learn.add_argument("--observations", type=int, default=3)
    learn.add_argument("--depth", type=int, default=1)
    learn.add_argument("--samples", type=int, default=100)
    learn.add_argument("--prior-scale", type=float, default=10.0)
    _add_common(learn)
    learn.set_defaults(func=_cmd_fable_learn)

    mist = sub.add_parser("mistakes", help="quantify the two flawed formulations")
    mist.add_argument("--p1", type=float, default=0.55)
    mist.add_argument("--q-hat", type=float, default=0.55)
    mist.add_argument("--evader-p1", type=float, default=0.5)
    mist.add_argument("--chaser-p1", type=float, default=0.55)
    _add_common(mist)
    mist.set_defaults(func=_cmd_mistakes)

    sailing = sub.add_parser("sailing", help="the sailing case study")
    ssub = sailing.add_subparsers(dest="sailing_command", required=True)
    infer = ssub.add_parser("infer", help="posterior of the policy parameter")
    infer.add_argument("--size", type=int, default=25)
    infer.add_argument("--samples", type=int, default=10000)
    infer.add_argument("--inner", type=int, default=20)
    infer.add_argument("--scale", type=float, default=0.25)
    infer.add_argument("--smoke", action="store_true",
                       help="few inner rollouts for a fast smoke run")
    _add_common(infer)
    infer.set_defaults(func=_cmd_sailing_infer)

    ev = ssub.add_parser("eval", help="expected travel cost of a policy")
    ev.add_argument("--policy", choices=("inferred", "greedy", "optimal"),
                    required=True)
    ev.add_argument("--size", type=int, default=25)
    ev.add_argument("--rollouts", type=int, default=10000)
    ev.add_argument("--samples", type=int, default=10000,
                    help="posterior samples when --policy inferred")
    ev.add_argument("--point-estimate", action="store_true",
                    help="fix theta to the posterior mean instead of redrawing")
    ev.add_argument("--smoke", action="store_true")
    _add_common(ev)
    ev.set_defaults(func=_cmd_sailing_eval)

    table = ssub.add_parser("table", help="travel-cost matrix across lake sizes")
    table.add_argument("--sizes", default="25,50,100")
    table.add_argument("--rollouts", type=int, default=10000)
    table.add_argument("--samples", type=int, default=10000)
    table.add_argument("--smoke", action="store_true")
    _add_common(table)
    table.set_defaults(func=_cmd_sailing_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():
    sys.exit(main(sys.argv[1:]))
