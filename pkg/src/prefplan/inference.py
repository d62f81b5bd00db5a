"""Core inference primitives: finite distributions, stochastic-conditioning
log-weights, and two Metropolis-Hastings kernels (plain and pseudo-marginal).

Every stochastic operation takes an explicit integer seed and is bit-reproducible:
the same inputs and seed always yield the same output.
"""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "FiniteDistribution",
    "PosteriorSamples",
    "stochastic_log_weight",
    "mh_chain",
    "pseudo_marginal_mh",
    "gaussian_walk",
    "flip_binary",
]


@dataclass(frozen=True)
class FiniteDistribution:
    """A distribution over a finite set of outcomes.

    The support carries arbitrary hashable outcome identifiers; weights are
    probabilities that must be nonnegative and sum to one within 1e-12.
    """

    support: tuple
    weights: tuple

    def __post_init__(self):
        if len(self.support) == 0:
            raise ValueError("support must be nonempty")
        if len(self.support) != len(self.weights):
            raise ValueError("support and weights must have equal length")
        if len(set(self.support)) != len(self.support):
            raise ValueError("support must not contain duplicates")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if abs(math.fsum(self.weights) - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {math.fsum(self.weights)!r}")

    @staticmethod
    def point_mass(outcome):
        return FiniteDistribution((outcome,), (1.0,))

    @staticmethod
    def bernoulli(p, success=1, failure=0):
        """Two-point distribution putting probability p on `success`."""
        return FiniteDistribution((success, failure), (float(p), 1.0 - float(p)))

    def mixed_with(self, other, alpha):
        """Mixture alpha*self + (1-alpha)*other over the union of supports."""
        acc = {}
        for y, w in zip(self.support, self.weights):
            acc[y] = acc.get(y, 0.0) + alpha * w
        for y, w in zip(other.support, other.weights):
            acc[y] = acc.get(y, 0.0) + (1.0 - alpha) * w
        total = math.fsum(acc.values())
        return FiniteDistribution(tuple(acc), tuple(w / total for w in acc.values()))


def stochastic_log_weight(log_density: Callable, dist: FiniteDistribution) -> float:
    """Log-weight of observing distribution `dist` rather than a single value.

    Returns sum_y q(y) * log p(y | x), the discrete form of conditioning on an
    observation being *distributed* as `dist`.  A point-mass distribution
    reduces to the ordinary log-likelihood of that point.  If any outcome with
    positive weight has zero conditional probability the weight is -inf.
    Zero-weight outcomes do not contribute.
    """
    terms = []
    for y, q in zip(dist.support, dist.weights):
        if q == 0.0:
            continue
        lp = log_density(y)
        if lp == -math.inf:
            return -math.inf
        terms.append(q * lp)
    return math.fsum(terms)


@dataclass
class PosteriorSamples:
    """A chain of scalar samples with acceptance-rate metadata.

    `values` holds the post-burn-in samples; `burn_in` is the number of
    discarded leading iterations.  `n_nonfinite` counts proposals rejected
    because a likelihood estimate came back non-finite (pseudo-marginal only).
    """

    values: list = field(repr=False)
    acceptance_rate: float
    seed: int
    burn_in: int
    n_nonfinite: int = 0

    def __post_init__(self):
        if len(self.values) == 0:
            raise ValueError("no samples left after burn-in")
        if not 0.0 <= self.acceptance_rate <= 1.0:
            raise ValueError("acceptance_rate must lie in [0, 1]")

    def mean(self):
        return float(np.mean(self.values))

    def stderr(self):
        v = np.asarray(self.values, dtype=float)
        return float(v.std(ddof=1) / math.sqrt(len(v)))

    def to_csv(self, path):
        with open(path, "w") as fh:
            fh.write("index,value\n")
            for i, v in enumerate(self.values):
                fh.write(f"{i},{v!r}\n")


def gaussian_walk(scale: float):
    """Symmetric Gaussian random-walk proposal with the given step scale."""

    def propose(rng, current):
        return current + scale * rng.standard_normal()

    return propose


def flip_binary(rng, current):
    """Symmetric proposal on {0, 1}: always propose the other state."""
    return 1 - current


def _validated_burn_in(n_iters, burn_in_fraction):
    if n_iters < 1:
        raise ValueError("n_iters must be >= 1")
    if not 0.0 <= burn_in_fraction < 1.0:
        raise ValueError("burn_in_fraction must lie in [0, 1)")
    return int(n_iters * burn_in_fraction)


def mh_chain(target_log_density: Callable, propose: Callable, init,
             n_iters: int, burn_in_fraction: float = 0.1, seed: int = 0) -> PosteriorSamples:
    """Metropolis-Hastings with a symmetric proposal.

    Accepts a candidate with probability min(1, exp(delta log-density)).
    The target must be finite at `init`.  Deterministic given `seed`.
    """
    burn_in = _validated_burn_in(n_iters, burn_in_fraction)
    current = init
    current_lp = target_log_density(current)
    if not math.isfinite(current_lp):
        raise ValueError(f"target log-density is not finite at init={init!r}")
    rng = np.random.default_rng(seed)
    values = []
    accepted = 0
    for i in range(n_iters):
        candidate = propose(rng, current)
        cand_lp = target_log_density(candidate)
        if rng.random() < math.exp(min(0.0, cand_lp - current_lp)):
            current, current_lp = candidate, cand_lp
            accepted += 1
        if i >= burn_in:
            values.append(float(current))
    return PosteriorSamples(values=values, acceptance_rate=accepted / n_iters,
                            seed=seed, burn_in=burn_in)


def pseudo_marginal_mh(unbiased_log_likelihood_estimator: Callable,
                       log_prior: Callable, propose: Callable, init,
                       n_iters: int, n_inner: int, seed: int = 0,
                       burn_in_fraction: float = 0.1) -> PosteriorSamples:
    """Pseudo-marginal Metropolis-Hastings.

    The estimator is called as estimator(theta, n_inner, rng) and must return
    a log of an unbiased estimate of the likelihood (the caller's
    responsibility).  The estimate is recomputed only for proposed points and
    retained for the current point.  Non-finite estimates reject the candidate
    and are counted rather than aborting: prohibitive (infinite-cost)
    simulations legitimately occur.
    """
    burn_in = _validated_burn_in(n_iters, burn_in_fraction)
    if n_inner < 1:
        raise ValueError("n_inner must be >= 1")
    rng = np.random.default_rng(seed)
    current = init
    current_ll = unbiased_log_likelihood_estimator(current, n_inner, rng)
    current_lp = log_prior(current)
    if not (math.isfinite(current_ll) and math.isfinite(current_lp)):
        raise ValueError(f"likelihood estimate or prior not finite at init={init!r}")
    values = []
    accepted = 0
    n_nonfinite = 0
    for i in range(n_iters):
        candidate = propose(rng, current)
        cand_lp = log_prior(candidate)
        if cand_lp == -math.inf:
            cand_ll = None  # outside the prior support; skip estimating
        else:
            cand_ll = unbiased_log_likelihood_estimator(candidate, n_inner, rng)
        if cand_ll is not None and not math.isfinite(cand_ll):
            n_nonfinite += 1
        elif cand_ll is not None and rng.random() < math.exp(min(
                0.0, (cand_ll + cand_lp) - (current_ll + current_lp))):
            current, current_ll, current_lp = candidate, cand_ll, cand_lp
            accepted += 1
        if i >= burn_in:
            values.append(float(current))
    return PosteriorSamples(values=values, acceptance_rate=accepted / n_iters,
                            seed=seed, burn_in=burn_in, n_nonfinite=n_nonfinite)
