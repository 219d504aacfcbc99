from dataclasses import dataclass
from typing import Optional

import numpy as np

from prefnoise.agent.policy import TabularPolicy
from prefnoise.agent.q_learning import value_iteration
from prefnoise.agent.rewards import reward_table
from prefnoise.envs import EnvGridworld, Environment, Policy, rollout, true_return


@dataclass(frozen=True)
class EvalResult:
    mean_return: float
    std_return: float
    episodes: int

    def __post_init__(self):
        if self.episodes < 1:
            raise ValueError('episodes must be >= 1')
        if self.std_return < 0:
            raise ValueError('std_return must be non-negative')


def evaluate(policy: Policy, env: Environment, episodes: int, rng: np.random.Generator,
             start=None) -> EvalResult:
    """Mean and std of TRUE episodic return over ``episodes`` rollouts."""
    if episodes < 1:
        raise ValueError(f'episodes must be >= 1, got {episodes}')
    returns = np.array([true_return(rollout(env, policy, rng, traj_id=i, start=start), env.gamma)
                        for i in range(episodes)])
    return EvalResult(mean_return=float(returns.mean()), std_return=float(returns.std()), episodes=episodes)


def optimal_policy(env: EnvGridworld, gamma: float = 0.95) -> TabularPolicy:
    """Greedy policy of the true-reward action values, found by value iteration."""
    return TabularPolicy(env, value_iteration(env, gamma, reward_table(env, 'true')))


def optimal_return(env: EnvGridworld, start: int, gamma: Optional[float] = None) -> float:
    """
    Best achievable return from ``start``: walk the shortest path to the goal
    and stay there, collecting +1 from step d-1 through step H-1.
    """
    gamma = env.gamma if gamma is None else gamma
    d = env.goal_distance(start)
    if d > env.horizon:
        return 0.0
    return float(sum(gamma ** i for i in range(d - 1, env.horizon)))
