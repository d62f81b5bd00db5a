"""Reference implementations of two flawed planning-as-inference formulations,
with the numbers that show why they are wrong.

Rewards appear in this module only (evasion = 1, capture = 0): the point is to
critique reward-based reasoning, so the critique keeps the original currency.
"""

from dataclasses import dataclass

__all__ = [
    "MistakeReport",
    "future_as_present_posterior",
    "future_as_present_iterates",
    "single_sample_nesting_policy",
]


@dataclass(frozen=True)
class MistakeReport:
    model_name: str
    p_bar1: float  # the flawed policy's probability of bar 1
    p_bar2: float
    claimed_value: float  # value the flawed model believes it achieves
    true_value: float     # value actually realized against the real opponent
    rational_value: float  # value of the best deterministic choice

    def __post_init__(self):
        for p in (self.p_bar1, self.p_bar2):
            if not 0.0 <= p <= 1.0:
                raise ValueError("policy probabilities must lie in [0, 1]")
        if abs(self.p_bar1 + self.p_bar2 - 1.0) > 1e-12:
            raise ValueError("policy probabilities must sum to 1")
        if self.true_value > self.rational_value + 1e-12:
            raise ValueError("true value cannot exceed the rational value")


def future_as_present_posterior(p1: float, q_hat: float) -> float:
    """Posterior probability of bar 1 when the anticipated meeting is
    conditioned on as if it were an observed present event.

    With prior Bernoulli(p1) on own choice and believed Bernoulli(q_hat) for
    the other agent, the flawed posterior is p1*q / (p1*q + (1-p1)*(1-q)).
    An agent that really wants to meet and believes q_hat > 1/2 should always
    pick bar 1; this posterior never does.
    """
    if not (0.0 < p1 < 1.0 and 0.0 < q_hat < 1.0):
        raise ValueError("probabilities must lie strictly in (0, 1)")
    return p1 * q_hat / (p1 * q_hat + (1 - p1) * (1 - q_hat))


def future_as_present_iterates(p1: float, q_hat: float, n_steps: int) -> list:
    """Demo of 'the more she thinks about it': feed the flawed posterior back
    in as the next prior.  Escalates toward certainty for q_hat > 1/2."""
    out = [p1]
    for _ in range(n_steps):
        out.append(future_as_present_posterior(out[-1], q_hat))
    return out


def future_as_present_report(p1: float, q_hat: float) -> MistakeReport:
    """Evaluate the future-as-present policy in the wants-to-meet setting."""
    p = future_as_present_posterior(p1, q_hat)
    true_value = p * q_hat + (1 - p) * (1 - q_hat)
    rational_value = max(q_hat, 1 - q_hat)
    return MistakeReport(
        model_name="future-as-present",
        p_bar1=p,
        p_bar2=1 - p,
        claimed_value=1.0,  # the conditioning treats the meeting as given
        true_value=true_value,
        rational_value=rational_value,
    )


def single_sample_nesting_policy(evader_p1: float, chaser_p1: float) -> MistakeReport:
    """Replace nested conditioning by conditioning on one sampled opponent move.

    The evader samples the chaser's location and deterministically avoids it,
    which makes P(second bar) = chaser_p1 whatever the evader's own prior.
    The flawed conditioning claims a sure escape (value 1); the realized
    evasion probability and the best deterministic choice are both computed
    against the chaser's actual distribution.
    """
    if not (0.0 < evader_p1 < 1.0 and 0.0 < chaser_p1 < 1.0):
        raise ValueError("probabilities must lie strictly in (0, 1)")
    p_bar2 = chaser_p1
    p_bar1 = 1 - p_bar2
    # evasion probability of the mixed policy against the true chaser
    true_value = p_bar1 * (1 - chaser_p1) + p_bar2 * chaser_p1
    rational_value = max(chaser_p1, 1 - chaser_p1)
    return MistakeReport(
        model_name="single-sample-nesting",
        p_bar1=p_bar1,
        p_bar2=p_bar2,
        claimed_value=1.0,
        true_value=true_value,
        rational_value=rational_value,
    )
