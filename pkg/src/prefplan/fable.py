"""Two agents choosing between two bars under probabilistic preferences.

Each agent has a prior probability of picking bar 1 (`p1`) and a meeting
preference `pm`: the probability of choosing the other agent's bar if the
other agent's plan were known.  An agent's rational behavior is the posterior
of its choice after stochastically conditioning on the believed distribution
of the other agent's choice.  Mutual reasoning recurses to a bounded
deliberation depth, with depth 0 corresponding to the prior behavior.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .inference import flip_binary, gaussian_walk, mh_chain

__all__ = [
    "AgentPreferences",
    "ChoicePosterior",
    "EpisodeOutcome",
    "PreferenceBelief",
    "PRESETS",
    "meeting_log_likelihood",
    "conditioned_choice",
    "analytical_choice",
    "softmax_choice",
    "mc_choice",
    "mc_sweep",
    "simulate_episode",
    "infer_meeting_preference",
]


def _logit(p):
    return math.log(p / (1.0 - p))


def _sigmoid(z):
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    e = math.exp(z)
    return e / (1.0 + e)


@dataclass(frozen=True)
class AgentPreferences:
    """An agent's bar prior and meeting preference, both strictly inside (0, 1)."""

    name: str
    p1: float  # prior probability of choosing bar 1
    pm: float  # probability of choosing the other agent's bar under clairvoyance

    def __post_init__(self):
        if not 0.0 < self.p1 < 1.0:
            raise ValueError(f"p1 must lie strictly in (0, 1), got {self.p1}")
        if not 0.0 < self.pm < 1.0:
            raise ValueError(f"pm must lie strictly in (0, 1), got {self.pm}")


@dataclass(frozen=True)
class ChoicePosterior:
    """Probability of choosing bar 1 at a given deliberation depth."""

    p_first: float
    depth: int
    method: str  # "analytical" or "monte-carlo"
    n_iters: Optional[int] = None
    stderr: Optional[float] = None

    def __post_init__(self):
        if not 0.0 <= self.p_first <= 1.0:
            raise ValueError("p_first must lie in [0, 1]")
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        if self.stderr is not None and self.stderr < 0:
            raise ValueError("stderr must be nonnegative")


@dataclass(frozen=True)
class EpisodeOutcome:
    choice_a: int  # bar index, 1 or 2
    choice_b: int
    met: bool

    def __post_init__(self):
        if self.choice_a not in (1, 2) or self.choice_b not in (1, 2):
            raise ValueError("choices must be bar indices 1 or 2")
        if self.met != (self.choice_a == self.choice_b):
            raise ValueError("met must hold exactly when both picked the same bar")


@dataclass
class PreferenceBelief:
    """Posterior samples of another agent's meeting preference, as log-odds."""

    log_odds_samples: list
    prior_spec: tuple  # (location, scale) of the normal prior on log-odds

    def __post_init__(self):
        if not all(math.isfinite(v) for v in self.log_odds_samples):
            raise ValueError("log-odds samples must be finite")
        if self.prior_spec[1] <= 0:
            raise ValueError("prior scale must be positive")


# The six preference configurations studied in the experiments.
PRESETS = {
    "meet-symmetric": (AgentPreferences("alice", 0.55, 0.9),
                       AgentPreferences("bob", 0.55, 0.9)),
    "meet-different-bars": (AgentPreferences("alice", 0.75, 0.75),
                            AgentPreferences("bob", 0.45, 0.75)),
    "chase-mild": (AgentPreferences("alice", 0.55, 0.25),
                   AgentPreferences("bob", 0.55, 0.75)),
    "chase-strong": (AgentPreferences("alice", 0.55, 0.1),
                     AgentPreferences("bob", 0.55, 0.9)),
    "avoid-mild": (AgentPreferences("alice", 0.55, 0.25),
                   AgentPreferences("bob", 0.55, 0.25)),
    "avoid-strong": (AgentPreferences("alice", 0.55, 0.05),
                     AgentPreferences("bob", 0.55, 0.05)),
}


def meeting_log_likelihood(prefs: AgentPreferences, q: float, chose_first: bool) -> float:
    """Conditional log-probability of the agent's choice given the belief q
    that the other agent heads to bar 1.

    This is the stochastic-conditioning weight of the agent's meeting
    preference under a Bernoulli(q) belief: a q-weighted sum of the two
    clairvoyant log-likelihoods.
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must lie in [0, 1]")
    if chose_first:
        return q * math.log(prefs.pm) + (1 - q) * math.log(1 - prefs.pm)
    return q * math.log(1 - prefs.pm) + (1 - q) * math.log(prefs.pm)


def conditioned_choice(prefs: AgentPreferences, q: float) -> float:
    """One-step posterior probability of bar 1 given belief q about the other.

    When the two conditional log-likelihoods tie (pm = 1/2 or q = 1/2) the
    likelihood is flat and the prior is returned untouched, exactly.
    """
    lt = meeting_log_likelihood(prefs, q, True)
    lf = meeting_log_likelihood(prefs, q, False)
    if lt == lf:
        return prefs.p1
    u1 = math.log(prefs.p1) + lt
    u2 = math.log1p(-prefs.p1) + lf
    return _sigmoid(u1 - u2)


@lru_cache(maxsize=None)
def _analytical_ladder(me: AgentPreferences, other: AgentPreferences, depth: int):
    """p(choose bar 1) for both pair orientations at every depth up to `depth`."""
    mine, theirs = [me.p1], [other.p1]
    for d in range(1, depth + 1):
        mine.append(conditioned_choice(me, theirs[d - 1]))
        theirs.append(conditioned_choice(other, mine[d - 1]))
    return tuple(mine), tuple(theirs)


def analytical_choice(me: AgentPreferences, other: AgentPreferences,
                      depth: int) -> ChoicePosterior:
    """Exact choice distribution after `depth` levels of mutual reasoning.

    Depth 0 is the prior p1; depth d conditions on the other agent's
    depth-(d-1) behavior.  Memoized over (me, other, depth).
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    mine, _ = _analytical_ladder(me, other, depth)
    return ChoicePosterior(p_first=mine[depth], depth=depth, method="analytical")


def softmax_choice(me: AgentPreferences, q: float) -> float:
    """Choice probability of the equivalent softmax agent.

    Rewards are the preference log-odds: r1 - r2 = logit(p1), rm = logit(pm).
    The utilities u1 = (r1 - r2) + q*rm and u2 = (1 - q)*rm reproduce the
    one-step conditioned posterior exactly (up to rounding).
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must lie in [0, 1]")
    r_diff = _logit(me.p1)
    rm = _logit(me.pm)
    u1 = r_diff + q * rm
    u2 = (1 - q) * rm
    return _sigmoid(u1 - u2)


def _child_seed(seed: int, depth: int, role: int) -> int:
    return int(np.random.SeedSequence((seed, depth, role)).generate_state(1)[0])


def _binary_choice_chain(prefs: AgentPreferences, q: float, n_iters: int,
                         burn_in_fraction: float, seed: int):
    """MH over the binary choice; state 1 means bar 1."""

    def target(x):
        first = x == 1
        prior = math.log(prefs.p1) if first else math.log1p(-prefs.p1)
        return prior + meeting_log_likelihood(prefs, q, first)

    chain = mh_chain(target, flip_binary, init=1, n_iters=n_iters,
                     burn_in_fraction=burn_in_fraction, seed=seed)
    p = float(np.mean(chain.values))
    stderr = math.sqrt(max(p * (1 - p), 0.0) / len(chain.values))
    return p, stderr


def mc_sweep(me: AgentPreferences, other: AgentPreferences, max_depth: int,
             n_iters: int = 5000, seed: int = 0, burn_in_fraction: float = 0.1):
    """Monte-Carlo choice estimates for both agents at depths 0..max_depth.

    Emulates stochastic conditioning by MH over each agent's binary choice,
    with the belief q taken as the empirical mean of the counterpart's chain
    one level below (q = 1/2 at the bottom).  Each (pair, depth) chain is run
    once and reused, so the sweep costs 2*(max_depth+1) chains.

    Returns (mine, theirs): two lists of ChoicePosterior indexed by depth.
    """
    if n_iters < 100:
        raise ValueError("n_iters must be >= 100")
    if max_depth < 0:
        raise ValueError("max_depth must be nonnegative")
    mine, theirs = [], []
    for d in range(max_depth + 1):
        q_mine = theirs[d - 1].p_first if d > 0 else 0.5
        q_theirs = mine[d - 1].p_first if d > 0 else 0.5
        p_a, se_a = _binary_choice_chain(me, q_mine, n_iters, burn_in_fraction,
                                         _child_seed(seed, d, 0))
        p_b, se_b = _binary_choice_chain(other, q_theirs, n_iters, burn_in_fraction,
                                         _child_seed(seed, d, 1))
        mine.append(ChoicePosterior(p_a, d, "monte-carlo", n_iters, se_a))
        theirs.append(ChoicePosterior(p_b, d, "monte-carlo", n_iters, se_b))
    return mine, theirs


def mc_choice(me: AgentPreferences, other: AgentPreferences, depth: int,
              n_iters: int = 5000, seed: int = 0,
              burn_in_fraction: float = 0.1) -> ChoicePosterior:
    """Monte-Carlo estimate of the choice distribution at one depth."""
    mine, _ = mc_sweep(me, other, depth, n_iters, seed, burn_in_fraction)
    return mine[depth]


def simulate_episode(a: AgentPreferences, b: AgentPreferences, depth: int,
                     seed: int = 0) -> EpisodeOutcome:
    """Draw one episode: each agent samples a bar from its analytical posterior."""
    rng = np.random.default_rng(seed)
    p_a = analytical_choice(a, b, depth).p_first
    p_b = analytical_choice(b, a, depth).p_first
    choice_a = 1 if rng.random() < p_a else 2
    choice_b = 1 if rng.random() < p_b else 2
    return EpisodeOutcome(choice_a, choice_b, choice_a == choice_b)


def _other_choice_logit(me: AgentPreferences, other_p1: float, lam: float,
                        depth: int) -> float:
    """Logit of the other agent's bar-1 probability when its meeting
    preference has log-odds `lam`, reasoning about `me` at the given depth.

    Kept in logit form so the observation likelihood stays stable for
    arbitrarily large |lam|.
    """
    z = _logit(other_p1)
    if depth == 0:
        return z
    p_me, p_other = me.p1, other_p1
    for d in range(1, depth + 1):
        z = _logit(other_p1) + (2 * p_me - 1) * lam
        p_me_next = conditioned_choice(me, p_other)
        p_other = _sigmoid(z)
        p_me = p_me_next
    return z


def _log_sigmoid(z):
    # log(1 / (1 + exp(-z))), stable for large |z|
    if z >= 0:
        return -math.log1p(math.exp(-z))
    return z - math.log1p(math.exp(z))


def infer_meeting_preference(me: AgentPreferences,
                             observed_other_choices: Sequence[int],
                             my_choice_model_depth: int = 1,
                             prior: tuple = (0.0, 10.0),
                             n_samples: int = 100, seed: int = 0,
                             other_p1: Optional[float] = None,
                             proposal_scale: Optional[float] = None,
                             n_iters: Optional[int] = None) -> PreferenceBelief:
    """Infer the other agent's meeting preference from its observed bar choices.

    MH over the log-odds of the other agent's pm.  Each observation is scored
    by the other agent's analytical choice probability at the given depth,
    with `me` as the believed counterpart; the prior is normal on log-odds.
    The chain is thinned to `n_samples` values.
    """
    obs = list(observed_other_choices)
    if not obs:
        raise ValueError("observed_other_choices must be nonempty")
    if any(c not in (1, 2) for c in obs):
        raise ValueError("observations must be bar indices 1 or 2")
    loc, scale = prior
    if scale <= 0:
        raise ValueError("prior scale must be positive")
    if other_p1 is None:
        other_p1 = me.p1
    if proposal_scale is None:
        proposal_scale = scale / 2.0
    if n_iters is None:
        n_iters = max(2000, 30 * n_samples)
    n_bar1 = sum(1 for c in obs if c == 1)
    n_bar2 = len(obs) - n_bar1

    def target(lam):
        z = _other_choice_logit(me, other_p1, lam, my_choice_model_depth)
        loglik = n_bar1 * _log_sigmoid(z) + n_bar2 * _log_sigmoid(-z)
        logprior = -0.5 * ((lam - loc) / scale) ** 2
        return loglik + logprior

    chain = mh_chain(target, gaussian_walk(proposal_scale), init=float(loc),
                     n_iters=n_iters, burn_in_fraction=0.1, seed=seed)
    kept = chain.values
    if len(kept) < n_samples:
        raise ValueError("chain too short for the requested number of samples")
    stride = len(kept) // n_samples
    thinned = kept[::stride][:n_samples]
    return PreferenceBelief(log_odds_samples=list(thinned), prior_spec=(loc, scale))
