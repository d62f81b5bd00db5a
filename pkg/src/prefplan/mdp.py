"""A 2-agent Markov decision process with deterministic transitions.

The environment is split cleanly from the agents: transitions are a
deterministic function of (state, composed action) and all stochasticity
lives in the two agent samplers.  A single agent in a noisy environment is
the special case where the second agent is neutral noise (the wind in the
sailing instance).  Episode length is controlled by an explicit step guard,
reported via a truncation flag rather than a discount factor.
"""

from dataclasses import dataclass
from typing import Any, Callable, Optional, Protocol

import numpy as np

__all__ = [
    "TwoAgentMdp",
    "EpisodeTrajectory",
    "AgentModel",
    "ApprenticeModel",
    "TransitionError",
    "unroll",
    "replay",
    "write_trajectory_csv",
]


class TransitionError(ValueError):
    """A transition was applied to a state/action pair it is not defined for."""


@dataclass(frozen=True)
class TwoAgentMdp:
    """Tuple (states, A1, A2, compose, transition, initial) with terminal ⊥.

    `transition` must be defined for every composed action from every
    non-terminal state; the terminal state absorbs.  `states` is an optional
    descriptor used for documentation and validation only.
    """

    initial: Any
    terminal: Any
    actions_1: tuple
    actions_2: tuple
    compose: Callable[[Any, Any], Any]
    transition: Callable[[Any, Any], Any]
    states: Optional[tuple] = None


@dataclass(frozen=True)
class EpisodeTrajectory:
    """Initial state plus the composed actions taken; intermediate states are
    reconstructible deterministically via `replay`."""

    s0: Any
    actions: tuple


class AgentModel(Protocol):
    """Interface of an agent's reasoning model.

    Concrete solvers are instance-specific: the bar fable conditions exactly
    over a binary choice, the sailing boat is handled by pseudo-marginal
    inference.  A generic solver for arbitrary instances is intentionally not
    provided: nested stochastic conditioning is intractable in general.
    """

    def prior_action_distribution(self, state): ...

    def belief_about_other(self, state, own_action): ...

    def desired_state_distribution(self, state): ...


class ApprenticeModel(Protocol):
    """Agent model with the desired-state distribution promoted to a latent
    variable under a prior, conditioned on an observed trajectory."""

    def preference_prior(self): ...

    def observed_trajectory(self) -> EpisodeTrajectory: ...


def unroll(mdp: TwoAgentMdp, agent_1: Callable, agent_2: Callable,
           max_steps: int, seed: int = 0, sequential: bool = False):
    """Run the process until the terminal state or `max_steps`.

    Agent samplers are called as agent(rng, state); in sequential mode the
    second agent also receives the first agent's action, agent_2(rng, state, a1).
    Returns (EpisodeTrajectory, truncated).
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    rng = np.random.default_rng(seed)
    state = mdp.initial
    actions = []
    for _ in range(max_steps):
        if state == mdp.terminal:
            break
        a1 = agent_1(rng, state)
        a2 = agent_2(rng, state, a1) if sequential else agent_2(rng, state)
        action = mdp.compose(a1, a2)
        try:
            state = mdp.transition(state, action)
        except Exception as exc:
            raise TransitionError(
                f"transition undefined for state {state!r}, action {action!r}") from exc
        actions.append(action)
    truncated = state != mdp.terminal
    return EpisodeTrajectory(s0=mdp.initial, actions=tuple(actions)), truncated


def replay(mdp: TwoAgentMdp, trajectory: EpisodeTrajectory) -> list:
    """Reconstruct the visited states; the final state is terminal iff the
    trajectory terminated."""
    states = [trajectory.s0]
    for i, action in enumerate(trajectory.actions):
        if states[-1] == mdp.terminal:
            raise TransitionError(f"action at step {i} follows the terminal state")
        try:
            states.append(mdp.transition(states[-1], action))
        except TransitionError:
            raise
        except Exception as exc:
            raise TransitionError(f"invalid action {action!r} at step {i}") from exc
    return states


def write_trajectory_csv(path, mdp: TwoAgentMdp, trajectory: EpisodeTrajectory,
                         encode_action=str, encode_state=str):
    """CSV with columns step, action, state (encodings are instance-defined)."""
    states = replay(mdp, trajectory)
    with open(path, "w") as fh:
        fh.write("step,action,state\n")
        for i, action in enumerate(trajectory.actions):
            fh.write(f"{i},{encode_action(action)},{encode_state(states[i + 1])}\n")
