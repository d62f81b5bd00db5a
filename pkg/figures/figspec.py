"""Shared machinery for the figure scripts: CSV readers and the renderers.

Input files are the CLI's CSV outputs (metadata comment line, header, rows).
Rendering is read-only and deterministic: the same CSV yields byte-identical
SVG output.
"""

from dataclasses import dataclass
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

plt.rcParams["svg.hashsalt"] = "prefplan-figures"

KINDS = ("depth-curves", "scatter", "histogram", "table")

EXPECTED_COLUMNS = {
    "depth-curves": ["agent", "depth", "p_first", "method", "stderr", "seed"],
    "scatter": ["pair", "scenario_bar1", "scenario_bar2"],
    "histogram": ["index", "theta"],
    "table": ["policy", "size", "mean_cost", "stderr", "n_rollouts"],
}


class FigureDataError(ValueError):
    """The input CSV does not carry the expected shape for the figure kind."""


@dataclass
class FigureSpec:
    input_path: str
    kind: str
    output_path: str
    title: Optional[str] = None
    xlabel: Optional[str] = None
    ylabel: Optional[str] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise FigureDataError(f"unknown figure kind {self.kind!r}")


def read_rows(path, kind):
    """Parse a CLI CSV; returns (meta line or None, list of row dicts)."""
    with open(path) as fh:
        lines = [l.rstrip("\n") for l in fh]
    meta = None
    if lines and lines[0].startswith("#"):
        meta = lines.pop(0)
    if not lines:
        raise FigureDataError(f"{path}: no header row")
    header = lines[0].split(",")
    expected = EXPECTED_COLUMNS[kind]
    if header != expected:
        raise FigureDataError(
            f"{path}: expected columns {expected} for {kind}, found {header}")
    rows = [dict(zip(header, line.split(","))) for line in lines[1:] if line]
    if not rows:
        raise FigureDataError(f"{path}: no data rows")
    return meta, rows


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def _render_depth_curves(spec):
    _, rows = read_rows(spec.input_path, spec.kind)
    agents = sorted({r["agent"] for r in rows})
    colors = {a: c for a, c in zip(agents, ("tab:blue", "tab:orange",
                                            "tab:green", "tab:red"))}
    fig, ax = plt.subplots(figsize=(6, 4))
    for agent in agents:
        ana = sorted(((int(r["depth"]), float(r["p_first"])) for r in rows
                      if r["agent"] == agent and r["method"] == "analytical"))
        mc = sorted(((int(r["depth"]), float(r["p_first"]), float(r["stderr"]))
                     for r in rows
                     if r["agent"] == agent and r["method"] == "monte-carlo"))
        if ana:
            ax.plot([d for d, _ in ana], [p for _, p in ana],
                    color=colors[agent], label=f"{agent} (analytical)")
        if mc:
            ax.errorbar([d for d, _, _ in mc], [p for _, p, _ in mc],
                        yerr=[3 * s for _, _, s in mc], fmt="o", ms=4,
                        color=colors[agent], alpha=0.7,
                        label=f"{agent} (Monte Carlo)")
    ax.set_xlabel(spec.xlabel or "deliberation depth")
    ax.set_ylabel(spec.ylabel or "probability of first bar")
    ax.set_ylim(0.0, 1.0)
    ax.axhline(0.5, color="gray", lw=0.5, ls=":")
    if spec.title:
        ax.set_title(spec.title)
    ax.legend(loc="best", fontsize=8)
    _save(fig, spec.output_path)
    return {"agents": agents, "n_rows": len(rows)}


def _render_scatter(spec):
    _, rows = read_rows(spec.input_path, spec.kind)
    x = np.array([float(r["scenario_bar1"]) for r in rows])
    y = np.array([float(r["scenario_bar2"]) for r in rows])
    below = int(np.sum(y < x))
    ties = int(np.sum(y == x))
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(x, y, s=14, alpha=0.8)
    lo = min(x.min(), y.min())
    hi = max(x.max(), y.max())
    ax.plot([lo, hi], [lo, hi], color="gray", lw=1)
    ax.set_xlabel(spec.xlabel or "log-odds after three first-bar visits")
    ax.set_ylabel(spec.ylabel or "log-odds after three second-bar visits")
    caption = f"{below} of {len(rows)} points below the diagonal"
    if ties:
        caption += f" ({ties} ties)"
    ax.set_title(spec.title or caption)
    if spec.title:
        ax.text(0.02, 0.98, caption, transform=ax.transAxes, va="top", fontsize=8)
    _save(fig, spec.output_path)
    return {"below_diagonal": below, "ties": ties, "n_rows": len(rows)}


def _render_histogram(spec):
    _, rows = read_rows(spec.input_path, spec.kind)
    thetas = np.array([float(r["theta"]) for r in rows])
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(thetas, bins=30, color="tab:blue", edgecolor="white")
    ax.set_xlabel(spec.xlabel or "policy parameter")
    ax.set_ylabel(spec.ylabel or "posterior samples")
    if spec.title:
        ax.set_title(spec.title)
    _save(fig, spec.output_path)
    return {"n_rows": len(rows), "median": float(np.median(thetas))}


def _render_table(spec):
    _, rows = read_rows(spec.input_path, spec.kind)
    sizes = sorted({int(r["size"]) for r in rows})
    policies = []
    for r in rows:  # keep first-appearance order
        if r["policy"] not in policies:
            policies.append(r["policy"])
    cells = {(r["policy"], int(r["size"])): r for r in rows}
    width = 18
    lines = [(spec.title or "expected travel cost").ljust(width)
             + "".join(str(s).rjust(width) for s in sizes)]
    for policy in policies:
        cols = []
        for size in sizes:
            r = cells.get((policy, size))
            if r is None:
                cols.append("-".rjust(width))
                continue
            mean = float(r["mean_cost"])
            se = float(r["stderr"])
            cols.append((f"{mean:.1f} +- {se:.1f}" if se else f"{mean:.1f}")
                        .rjust(width))
        lines.append(policy.ljust(width) + "".join(cols))
    with open(spec.output_path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return {"policies": policies, "sizes": sizes}


_RENDERERS = {
    "depth-curves": _render_depth_curves,
    "scatter": _render_scatter,
    "histogram": _render_histogram,
    "table": _render_table,
}


def render(spec: FigureSpec):
    """Render one figure or text table; returns a dict of summary facts."""
    return _RENDERERS[spec.kind](spec)
