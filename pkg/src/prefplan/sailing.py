"""The sailing problem: a boat crossing a square lake under a random-walk wind.

The boat heads to one of 8 adjacent squares each step; the unit distance cost
depends on the heading relative to the wind (away/down/cross/up; dead into the
wind is excluded), diagonal legs cost sqrt(2) times the unit cost, and
changing tack costs a flat delay.  Wind indices encode the direction the wind
blows TOWARD, so heading with index equal to the wind runs dead downwind
("away", the cheapest leg).  Running dead downwind frees the sail: the tack
resets, and the next turn to either side incurs no delay.

The boat is agent 1 of a 2-agent MDP; the wind random walk is the neutral
second agent.  The parametric policy picks legs with log-probability
-theta * distance(next, goal) up to normalization; the conditioned model's
behavior additionally tilts each leg by exp(-leg cost).
"""

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple, Optional

import numpy as np
from scipy.special import logsumexp

from .inference import PosteriorSamples, gaussian_walk, pseudo_marginal_mh
from .mdp import EpisodeTrajectory, TwoAgentMdp, unroll

__all__ = [
    "LakeSpec", "WindModel", "CostTable", "SailingState", "PolicyParam",
    "PORT", "UNSET", "STARBOARD", "HEADING_NAMES", "GOAL", "InfeasibleLegError",
    "relative_point_of_sail", "leg_cost", "feasible_legs", "policy_log_prob",
    "greedy_policy", "sailing_mdp", "rollout", "RolloutResult",
    "value_iteration", "ValueIterationResult", "optimal_expected_cost",
    "TabularPolicy", "ThetaPolicy", "make_greedy_policy", "make_optimal_policy",
    "infer_theta", "evaluate_policy", "evaluate_inferred", "EvalResult",
]

# headings/wind directions, clockwise from North
HEADING_NAMES = ("N", "NE", "E", "SE", "S", "SW", "W", "NW")
_DX = np.array([0, 1, 1, 1, 0, -1, -1, -1])
_DY = np.array([1, 1, 0, -1, -1, -1, 0, 1])
_LEG_LEN = np.where(np.arange(8) % 2 == 1, math.sqrt(2.0), 1.0)
_CATEGORIES = ("away", "down", "cross", "up", "into")

PORT, UNSET, STARBOARD = -1, 0, 1
GOAL = "goal"  # terminal state of the sailing MDP


class InfeasibleLegError(ValueError):
    """Heading dead into the wind or leaving the lake."""


@dataclass(frozen=True)
class LakeSpec:
    """Square lake of `size` squares per side; start and goal at opposite corners."""

    size: int

    def __post_init__(self):
        if self.size < 2:
            raise ValueError("lake size must be >= 2")

    @property
    def start(self):
        return (0, 0)

    @property
    def goal(self):
        return (self.size - 1, self.size - 1)

    def contains(self, position):
        x, y = position
        return 0 <= x < self.size and 0 <= y < self.size


@dataclass(frozen=True)
class WindModel:
    """Random-walk wind: keep direction, or rotate one tick ccw/cw per step."""

    p_same: float = 0.4
    p_left: float = 0.3   # counterclockwise
    p_right: float = 0.3  # clockwise

    def __post_init__(self):
        probs = (self.p_same, self.p_left, self.p_right)
        if any(p < 0 for p in probs):
            raise ValueError("wind probabilities must be nonnegative")
        if abs(math.fsum(probs) - 1.0) > 1e-12:
            raise ValueError("wind probabilities must sum to 1")


@dataclass(frozen=True)
class CostTable:
    """Unit costs per point of sail (per unit distance) and the flat tack delay."""

    into: float = math.inf
    up: float = 4.0
    cross: float = 3.0
    down: float = 2.0
    away: float = 1.0
    delay: float = 4.0

    def __post_init__(self):
        if not self.away <= self.down <= self.cross <= self.up:
            raise ValueError("unit costs must satisfy away <= down <= cross <= up")
        if math.isinf(self.up) or not math.isinf(self.into):
            raise ValueError("into must be the unique infinite entry")
        if self.delay < 0:
            raise ValueError("delay must be nonnegative")

    def unit(self, category_index):
        return (self.away, self.down, self.cross, self.up, self.into)[category_index]


@dataclass(frozen=True)
class SailingState:
    """Boat position, wind direction (blow-toward, 0..7), and tack.

    tack is the signed side of the boat-wind angle: PORT (-1) or STARBOARD (+1),
    or UNSET (0) at the start of an episode and after a dead-downwind leg.
    """

    position: tuple
    wind: int
    tack: int = UNSET

    def __post_init__(self):
        if self.wind not in range(8):
            raise ValueError("wind must be a direction index 0..7")
        if self.tack not in (PORT, UNSET, STARBOARD):
            raise ValueError("tack must be -1, 0, or +1")


@dataclass(frozen=True)
class PolicyParam:
    theta: float

    def __post_init__(self):
        if not self.theta > 0:
            raise ValueError("theta must be positive")


def _theta_value(theta):
    return theta.theta if isinstance(theta, PolicyParam) else float(theta)


def _signed_tick_diff(heading, wind):
    d = (heading - wind) % 8
    return d if d <= 4 else d - 8


def relative_point_of_sail(heading: int, wind: int):
    """Category of the heading relative to the wind plus the signed side.

    The signed tick difference lies in {-3..4}; its magnitude maps to
    away(0)/down(1)/cross(2)/up(3)/into(4) and its sign gives the tack side.
    """
    if heading not in range(8) or wind not in range(8):
        raise ValueError("heading and wind must be direction indices 0..7")
    s = _signed_tick_diff(heading, wind)
    return _CATEGORIES[abs(s)], (0 if s == 0 else (1 if s > 0 else -1))


def leg_cost(state: SailingState, heading: int, lake: LakeSpec,
             cost_table: CostTable = CostTable()):
    """Cost of one leg and the tack after it.

    cost = unit(category) * length + delay if the tack flips; diagonal legs
    have length sqrt(2).  A dead-downwind leg resets the tack to UNSET, and a
    leg from an UNSET tack incurs no delay.
    """
    s = _signed_tick_diff(heading, state.wind)
    if abs(s) == 4:
        raise InfeasibleLegError(f"heading {HEADING_NAMES[heading]} is dead into the wind")
    nxt = (state.position[0] + int(_DX[heading]), state.position[1] + int(_DY[heading]))
    if not lake.contains(nxt):
        raise InfeasibleLegError(f"heading {HEADING_NAMES[heading]} leaves the lake")
    new_tack = 0 if s == 0 else (1 if s > 0 else -1)
    cost = cost_table.unit(abs(s)) * float(_LEG_LEN[heading])
    if state.tack != UNSET and new_tack != UNSET and new_tack != state.tack:
        cost += cost_table.delay
    return cost, new_tack


def feasible_legs(state: SailingState, lake: LakeSpec):
    """All headings except dead into the wind and those leaving the lake."""
    out = []
    for h in range(8):
        if abs(_signed_tick_diff(h, state.wind)) == 4:
            continue
        nxt = (state.position[0] + int(_DX[h]), state.position[1] + int(_DY[h]))
        if lake.contains(nxt):
            out.append(h)
    return tuple(out)


def _next_distance(state, heading, lake):
    gx, gy = lake.goal
    nx = state.position[0] + int(_DX[heading])
    ny = state.position[1] + int(_DY[heading])
    return math.hypot(gx - nx, gy - ny)


def policy_log_prob(theta, state: SailingState, heading: int, lake: LakeSpec) -> float:
    """log Pr(leg) = -theta * distance(next, goal) - log Z over feasible legs."""
    th = _theta_value(theta)
    legs = feasible_legs(state, lake)
    if heading not in legs:
        raise InfeasibleLegError(f"heading {heading} is not feasible in this state")
    logits = np.array([-th * _next_distance(state, h, lake) for h in legs])
    return float(logits[legs.index(heading)] - logsumexp(logits))


def greedy_policy(state: SailingState, lake: LakeSpec,
                  cost_table: CostTable = CostTable()) -> int:
    """The feasible heading with the steepest decrease of distance to the goal.

    Ties break toward the lower immediate leg cost, then the lower heading index.
    """
    best = None
    for h in feasible_legs(state, lake):
        key = (_next_distance(state, h, lake), leg_cost(state, h, lake, cost_table)[0], h)
        if best is None or key < best:
            best = key
    return best[2]


# ---------------------------------------------------------------------------
# MDP instance and rollouts
# ---------------------------------------------------------------------------

class RolloutResult(NamedTuple):
    trajectory: EpisodeTrajectory
    total_cost: float
    truncated: bool


def sailing_mdp(lake: LakeSpec, initial_wind: int, wind_model: WindModel = WindModel()):
    """The 2-agent MDP: boat headings compose with wind rotations.

    Actions compose to (heading, rotation); the transition moves the boat,
    rotates the wind, and updates the tack.  Reaching the goal yields GOAL.
    """

    def transition(state, action):
        heading, rotation = action
        _, new_tack = leg_cost(state, heading, lake)  # validates feasibility
        nxt = (state.position[0] + int(_DX[heading]),
               state.position[1] + int(_DY[heading]))
        if nxt == lake.goal:
            return GOAL
        return SailingState(nxt, (state.wind + rotation) % 8, new_tack)

    return TwoAgentMdp(
        initial=SailingState((0, 0), initial_wind, UNSET),
        terminal=GOAL,
        actions_1=tuple(range(8)),
        actions_2=(-1, 0, 1),
        compose=lambda a1, a2: (a1, a2),
        transition=transition,
    )


def _wind_agent(wind_model: WindModel):
    rotations = np.array([0, -1, 1])
    probs = np.array([wind_model.p_same, wind_model.p_left, wind_model.p_right])

    def sample(rng, state):
        return int(rotations[rng.choice(3, p=probs)])

    return sample


def _policy_agent(theta, lake):
    th = _theta_value(theta)

    def sample(rng, state):
        legs = feasible_legs(state, lake)
        logits = np.array([-th * _next_distance(state, h, lake) for h in legs])
        logits -= logits.max()
        w = np.exp(logits)
        w /= w.sum()
        return legs[int(rng.choice(len(legs), p=w))]

    return sample


def _derived_seed(seed, tag):
    return int(np.random.SeedSequence((seed, tag)).generate_state(1)[0])


def rollout(theta, lake: LakeSpec, wind_model: WindModel = WindModel(),
            cost_table: CostTable = CostTable(), max_steps: Optional[int] = None,
            seed: int = 0) -> RolloutResult:
    """Simulate the parametric policy against the wind walk until goal or cap.

    The initial wind is uniform over the 8 directions.  Returns the episode
    trajectory, the accumulated cost, and a truncation flag.
    """
    if max_steps is None:
        max_steps = 10 * lake.size
    initial_wind = int(np.random.default_rng(_derived_seed(seed, 0)).integers(8))
    mdp = sailing_mdp(lake, initial_wind, wind_model)
    trajectory, truncated = unroll(mdp, _policy_agent(theta, lake),
                                   _wind_agent(wind_model), max_steps=max_steps,
                                   seed=_derived_seed(seed, 1))
    state = mdp.initial
    total = 0.0
    for heading, rotation in trajectory.actions:
        cost, _ = leg_cost(state, heading, lake, cost_table)
        total += cost
        state = mdp.transition(state, (heading, rotation))
    return RolloutResult(trajectory, total, truncated)


# ---------------------------------------------------------------------------
# vectorised lake tables and batch rollouts
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _lake_tables(size):
    """Static per-lake arrays: next position, next distance, point-of-sail."""
    n = size
    P = n * n
    xs, ys = np.divmod(np.arange(P), n)
    nxt = np.full((P, 8), -1, dtype=np.int64)
    ndist = np.full((P, 8), np.inf)
    for h in range(8):
        nx, ny = xs + _DX[h], ys + _DY[h]
        ok = (nx >= 0) & (nx < n) & (ny >= 0) & (ny < n)
        nxt[ok, h] = nx[ok] * n + ny[ok]
        ndist[ok, h] = np.hypot(n - 1 - nx[ok], n - 1 - ny[ok])
    cat = np.zeros((8, 8), dtype=np.int64)   # [heading, wind]
    sgn = np.zeros((8, 8), dtype=np.int64)
    for h in range(8):
        for w in range(8):
            s = _signed_tick_diff(h, w)
            cat[h, w] = abs(s)
            sgn[h, w] = int(np.sign(s))
    return nxt, ndist, cat, sgn


def _pos_index(position, size):
    return position[0] * size + position[1]


def _batch_costs(lake, wind_model, cost_table, n_boats, rng, max_steps,
                 thetas=None, tilted=False, heading_table=None):
    """Vectorised rollouts; returns per-boat cost with inf marking truncation.

    Either `thetas` (per-boat policy parameter, optionally cost-tilted) or
    `heading_table` with shape (P, 8, 3) indexed by tack+1 must be given.
    """
    n = lake.size
    NXT, NDIST, CAT, SGN = _lake_tables(n)
    goal = _pos_index(lake.goal, n)
    unit = np.array([cost_table.away, cost_table.down, cost_table.cross,
                     cost_table.up, cost_table.into])
    wind_probs = np.array([wind_model.p_left, wind_model.p_same, wind_model.p_right])
    pos = np.zeros(n_boats, dtype=np.int64)
    wind = rng.integers(0, 8, size=n_boats)
    tack = np.zeros(n_boats, dtype=np.int64)  # signed: -1, 0, +1
    cost = np.zeros(n_boats)
    active = np.ones(n_boats, dtype=bool)
    bidx = np.arange(n_boats)
    for _ in range(max_steps):
        if not active.any():
            break
        d = NDIST[pos]                 # (B, 8)
        cats = CAT.T[wind]             # (B, 8)
        sg = SGN.T[wind]
        feas = np.isfinite(d) & (cats < 4)
        dl = np.where((tack[:, None] != 0) & (sg != 0) & (sg != tack[:, None]),
                      cost_table.delay, 0.0)
        legc = unit[cats] * _LEG_LEN[None, :] + dl
        if heading_table is not None:
            choice = heading_table[pos, wind, tack + 1]
        else:
            logits = -thetas[:, None] * d
            if tilted:
                logits = logits - legc
            logits = np.where(feas, logits, -np.inf)
            logits -= logits.max(axis=1, keepdims=True)
            w = np.exp(logits)
            w /= w.sum(axis=1, keepdims=True)
            u = rng.random(n_boats)
            choice = np.minimum((np.cumsum(w, axis=1) < u[:, None]).sum(axis=1), 7)
        step_cost = legc[bidx, choice]
        cost = np.where(active, cost + step_cost, cost)
        pos = np.where(active, NXT[pos, choice], pos)
        tack = np.where(active, sg[bidx, choice], tack)
        roll = rng.choice(np.array([-1, 0, 1]), size=n_boats, p=wind_probs)
        wind = np.where(active, (wind + roll) % 8, wind)
        active = active & (pos != goal)
    cost[active] = np.inf
    return cost


# ---------------------------------------------------------------------------
# value iteration
# ---------------------------------------------------------------------------

@dataclass
class ValueIterationResult:
    values: np.ndarray          # (P, 8, 3); tack axis indexed tack+1
    heading_table: np.ndarray   # argmin headings, same shape
    residuals: list
    start_value: float


def value_iteration(lake: LakeSpec, wind_model: WindModel = WindModel(),
                    cost_table: CostTable = CostTable(), tolerance: float = 1e-6,
                    max_sweeps: int = 100000) -> ValueIterationResult:
    """Minimum expected cost-to-go over states (position, wind, tack).

    Jacobi sweeps from an admissible euclidean lower bound; the expectation
    runs over the wind walk; the goal is absorbing at value 0.  The tack axis
    is indexed tack+1 (PORT, UNSET, STARBOARD at 0, 1, 2).
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    n = lake.size
    NXT, NDIST, CAT, SGN = _lake_tables(n)
    P = n * n
    goal = _pos_index(lake.goal, n)
    xs, ys = np.divmod(np.arange(P), n)
    dist0 = np.hypot(n - 1 - xs, n - 1 - ys)
    unit = np.array([cost_table.away, cost_table.down, cost_table.cross,
                     cost_table.up, cost_table.into])
    # per heading: cost (8 winds, 3 tacks) and next tack index
    costs_h = np.empty((8, 8, 3))
    tnew_h = np.empty((8, 8, 3), dtype=np.int64)
    for h in range(8):
        for w in range(8):
            s = SGN[h, w]
            c = unit[CAT[h, w]] * float(_LEG_LEN[h])
            for t_idx, t in enumerate((-1, 0, 1)):
                flip = t != 0 and s != 0 and s != t
                costs_h[h, w, t_idx] = c + (cost_table.delay if flip else 0.0)
                tnew_h[h, w, t_idx] = s + 1
    V = np.tile(dist0[:, None, None], (1, 8, 3))
    V[goal] = 0.0
    residuals = []
    w_same, w_left, w_right = wind_model.p_same, wind_model.p_left, wind_model.p_right
    winds = np.arange(8)
    for _ in range(max_sweeps):
        EV = w_same * V + w_left * np.roll(V, 1, axis=1) + w_right * np.roll(V, -1, axis=1)
        best = np.full((P, 8, 3), np.inf)
        arg = np.zeros((P, 8, 3), dtype=np.int64)
        for h in range(8):
            valid = NXT[:, h] >= 0
            np_idx = np.where(valid, NXT[:, h], 0)
            ev = EV[np_idx[:, None, None], winds[None, :, None], tnew_h[h][None, :, :]]
            tot = np.where(valid[:, None, None], costs_h[h][None, :, :] + ev, np.inf)
            better = tot < best
            arg = np.where(better, h, arg)
            best = np.where(better, tot, best)
        best[goal] = 0.0
        arg[goal] = 0
        res = float(np.max(np.abs(best - V)))
        residuals.append(res)
        V = best
        if res < tolerance:
            start = _pos_index(lake.start, n)
            return ValueIterationResult(values=V, heading_table=arg,
                                        residuals=residuals,
                                        start_value=float(V[start, :, 1].mean()))
    raise RuntimeError(f"value iteration did not converge in {max_sweeps} sweeps")


def optimal_expected_cost(lake: LakeSpec, wind_model: WindModel = WindModel(),
                          cost_table: CostTable = CostTable(),
                          tolerance: float = 1e-6) -> float:
    """Expected cost of the optimal policy from the start corner, averaged
    over a uniform initial wind with the tack unset."""
    return value_iteration(lake, wind_model, cost_table, tolerance).start_value


# ---------------------------------------------------------------------------
# policies and evaluation
# ---------------------------------------------------------------------------

class TabularPolicy:
    """Deterministic policy backed by a (P, 8, 3) heading table (tack axis tack+1)."""

    def __init__(self, lake: LakeSpec, heading_table: np.ndarray, name: str):
        self.lake = lake
        self.heading_table = heading_table
        self.name = name

    def __call__(self, rng, state: SailingState) -> int:
        p = _pos_index(state.position, self.lake.size)
        return int(self.heading_table[p, state.wind, state.tack + 1])


class ThetaPolicy:
    """Stochastic parametric policy; `tilted` applies the exp(-leg cost) factor
    of the conditioned model to each step's choice."""

    def __init__(self, theta, lake: LakeSpec, tilted: bool = False,
                 cost_table: CostTable = CostTable()):
        self.theta = _theta_value(theta)
        self.lake = lake
        self.tilted = tilted
        self.cost_table = cost_table

    def __call__(self, rng, state: SailingState) -> int:
        legs = feasible_legs(state, self.lake)
        logits = np.array([-self.theta * _next_distance(state, h, self.lake)
                           for h in legs])
        if self.tilted:
            logits = logits - np.array([leg_cost(state, h, self.lake, self.cost_table)[0]
                                        for h in legs])
        logits -= logits.max()
        w = np.exp(logits)
        w /= w.sum()
        return legs[int(rng.choice(len(legs), p=w))]


@lru_cache(maxsize=None)
def _greedy_table(size, cost_table: CostTable):
    lake = LakeSpec(size)
    table = np.zeros((size * size, 8, 3), dtype=np.int64)
    for x in range(size):
        for y in range(size):
            if (x, y) == lake.goal:
                continue
            for w in range(8):
                for t in (-1, 0, 1):
                    state = SailingState((x, y), w, t)
                    table[_pos_index((x, y), size), w, t + 1] = greedy_policy(
                        state, lake, cost_table)
    return table


def make_greedy_policy(lake: LakeSpec, cost_table: CostTable = CostTable()) -> TabularPolicy:
    return TabularPolicy(lake, _greedy_table(lake.size, cost_table), "greedy")


def make_optimal_policy(lake: LakeSpec, wind_model: WindModel = WindModel(),
                        cost_table: CostTable = CostTable(),
                        tolerance: float = 1e-6) -> TabularPolicy:
    result = value_iteration(lake, wind_model, cost_table, tolerance)
    return TabularPolicy(lake, result.heading_table, "optimal")


class EvalResult(NamedTuple):
    mean_cost: float
    stderr: float
    n_rollouts: int
    n_truncated: int


def _finish_eval(costs):
    finite = np.isfinite(costs)
    n_truncated = int((~finite).sum())
    if n_truncated > 0.01 * len(costs):
        warnings.warn(f"{n_truncated}/{len(costs)} rollouts truncated; "
                      "mean excludes them", stacklevel=3)
    kept = costs[finite]
    if len(kept) < 2:
        return EvalResult(mean_cost=math.nan, stderr=math.nan,
                          n_rollouts=len(costs), n_truncated=n_truncated)
    return EvalResult(mean_cost=float(kept.mean()),
                      stderr=float(kept.std(ddof=1) / math.sqrt(len(kept))),
                      n_rollouts=len(costs), n_truncated=n_truncated)


def evaluate_policy(policy: Callable, lake: LakeSpec,
                    wind_model: WindModel = WindModel(),
                    cost_table: CostTable = CostTable(), n_rollouts: int = 10000,
                    seed: int = 0, max_steps: Optional[int] = None) -> EvalResult:
    """Monte-Carlo mean and standard error of a policy's travel cost.

    `policy` is a sampler (rng, state) -> heading.  Tabular policies run on
    the vectorised engine; arbitrary callables are stepped one state at a time.
    Truncated rollouts are excluded from the mean and reported (with a warning
    above 1%).
    """
    if n_rollouts < 100:
        raise ValueError("n_rollouts must be >= 100")
    if max_steps is None:
        max_steps = 10 * lake.size
    rng = np.random.default_rng(seed)
    if isinstance(policy, TabularPolicy):
        costs = _batch_costs(lake, wind_model, cost_table, n_rollouts, rng,
                             max_steps, heading_table=policy.heading_table)
        return _finish_eval(costs)
    if isinstance(policy, ThetaPolicy):
        costs = _batch_costs(lake, wind_model, cost_table, n_rollouts, rng,
                             max_steps, thetas=np.full(n_rollouts, policy.theta),
                             tilted=policy.tilted)
        return _finish_eval(costs)
    goal = lake.goal
    costs = np.empty(n_rollouts)
    for k in range(n_rollouts):
        state = SailingState((0, 0), int(rng.integers(8)), UNSET)
        total = 0.0
        steps = 0
        while state.position != goal and steps < max_steps:
            h = policy(rng, state)
            c, new_tack = leg_cost(state, h, lake, cost_table)
            total += c
            nxt = (state.position[0] + int(_DX[h]), state.position[1] + int(_DY[h]))
            rot = int(np.array([0, -1, 1])[rng.choice(
                3, p=[wind_model.p_same, wind_model.p_left, wind_model.p_right])])
            state = SailingState(nxt, (state.wind + rot) % 8, new_tack)
            steps += 1
        costs[k] = total if state.position == goal else np.inf
    return _finish_eval(costs)


def evaluate_inferred(theta_samples, lake: LakeSpec,
                      wind_model: WindModel = WindModel(),
                      cost_table: CostTable = CostTable(), n_rollouts: int = 10000,
                      seed: int = 0, max_steps: Optional[int] = None,
                      point_estimate: bool = False, tilted: bool = True) -> EvalResult:
    """Travel cost of the inferred behavior, integrating over the posterior.

    theta is redrawn per rollout from `theta_samples` (or fixed to their mean
    with point_estimate=True).  By default each leg choice carries the
    conditioned model's exp(-leg cost) factor on top of the distance policy;
    tilted=False evaluates the bare parametric policy instead.
    """
    if n_rollouts < 100:
        raise ValueError("n_rollouts must be >= 100")
    if max_steps is None:
        max_steps = 10 * lake.size
    samples = np.asarray(list(theta_samples), dtype=float)
    if samples.size == 0 or not np.all(samples > 0):
        raise ValueError("theta samples must be positive and nonempty")
    rng = np.random.default_rng(seed)
    if point_estimate:
        thetas = np.full(n_rollouts, samples.mean())
    else:
        thetas = rng.choice(samples, size=n_rollouts)
    costs = _batch_costs(lake, wind_model, cost_table, n_rollouts, rng,
                         max_steps, thetas=thetas, tilted=tilted)
    return _finish_eval(costs)


# ---------------------------------------------------------------------------
# posterior inference of the policy parameter
# ---------------------------------------------------------------------------

def infer_theta(lake: LakeSpec, wind_model: WindModel = WindModel(),
                cost_table: CostTable = CostTable(), n_samples: int = 10000,
                n_inner: int = 20, proposal_scale: float = 0.25, seed: int = 0,
                max_steps: Optional[int] = None,
                burn_in_fraction: float = 0.1) -> PosteriorSamples:
    """Pseudo-marginal MH over log theta.

    The likelihood of theta is the expectation of exp(-travel cost) under the
    parametric policy and the wind walk; it is estimated by the average of
    exp(-cost + c) over `n_inner` rollouts, with the fixed stabilization
    offset c set to the greedy policy's mean cost.  Truncated (effectively
    infinite-cost) rollouts contribute zero; an all-zero estimate rejects the
    candidate.  The prior is improper uniform on log theta >= 0.  Returns
    `n_samples` post-burn-in samples of log theta.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if max_steps is None:
        max_steps = 10 * lake.size
    greedy = make_greedy_policy(lake, cost_table)
    offset_rng = np.random.default_rng(_derived_seed(seed, 100))
    offset_costs = _batch_costs(lake, wind_model, cost_table, 200, offset_rng,
                                max_steps, heading_table=greedy.heading_table)
    c0 = float(offset_costs[np.isfinite(offset_costs)].mean())

    def estimator(lam, k, rng):
        costs = _batch_costs(lake, wind_model, cost_table, k, rng, max_steps,
                             thetas=np.full(k, math.exp(lam)))
        return float(logsumexp(-costs + c0) - math.log(k))

    def log_prior(lam):
        return 0.0 if lam >= 0.0 else -math.inf

    n_iters = math.ceil(n_samples / (1.0 - burn_in_fraction))
    chain = pseudo_marginal_mh(estimator, log_prior, gaussian_walk(proposal_scale),
                               init=0.0, n_iters=n_iters, n_inner=n_inner,
                               seed=_derived_seed(seed, 101),
                               burn_in_fraction=burn_in_fraction)
    chain.values = chain.values[:n_samples]
    return chain
