"""Planning and reinforcement learning as pure Bayesian inference with
probabilistic preferences."""

__version__ = "0.1.0"

from .inference import (FiniteDistribution, PosteriorSamples, flip_binary,
                        gaussian_walk, mh_chain, pseudo_marginal_mh,
                        stochastic_log_weight)
from .fable import (PRESETS, AgentPreferences, ChoicePosterior, EpisodeOutcome,
                    PreferenceBelief, analytical_choice, conditioned_choice,
                    infer_meeting_preference, mc_choice, mc_sweep,
                    meeting_log_likelihood, simulate_episode, softmax_choice)
from .mistakes import (MistakeReport, future_as_present_iterates,
                       future_as_present_posterior, future_as_present_report,
                       single_sample_nesting_policy)
from .mdp import (AgentModel, ApprenticeModel, EpisodeTrajectory,
                  TransitionError, TwoAgentMdp, replay, unroll,
                  write_trajectory_csv)
from .sailing import (CostTable, EvalResult, InfeasibleLegError, LakeSpec,
                      PolicyParam, RolloutResult, SailingState, TabularPolicy,
                      ThetaPolicy, WindModel, evaluate_inferred,
                      evaluate_policy, feasible_legs, greedy_policy,
                      infer_theta, leg_cost, make_greedy_policy,
                      make_optimal_policy, optimal_expected_cost,
                      policy_log_prob, relative_point_of_sail, rollout,
                      sailing_mdp, value_iteration)
