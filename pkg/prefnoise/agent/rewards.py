from typing import Callable, Union

import numpy as np

from prefnoise.envs import EnvGridworld, Environment

RewardSource = Union[str, object]


def is_true_source(source: RewardSource) -> bool:
    if isinstance(source, str):
        if source != 'true':
            raise ValueError(f"reward source must be 'true' or a reward model, got {source!r}")
        return True
    if not hasattr(source, 'step_rewards'):
        raise ValueError(f'{type(source).__name__} has no step_rewards, cannot be used as a reward source')
    return False


def reward_table(env: EnvGridworld, source: RewardSource) -> np.ndarray:
    """R[s, a] for every gridworld state and action, from the true or a learned reward."""
    if is_true_source(source):
        return np.array([[env.step(s, a)[1] for a in range(env.n_actions)] for s in range(env.n_states)])
    features = np.array([np.concatenate([env.observe(s), env.action_vector(a)])
                         for s in range(env.n_states) for a in range(env.n_actions)])
    return np.asarray(source.step_rewards(features)).reshape(env.n_states, env.n_actions)


def reward_fn(env: Environment, source: RewardSource) -> Callable[[object, object, float], float]:
    """(state, action, true_reward) -> reward seen by the learner."""
    if is_true_source(source):
        return lambda state, action, true_reward: true_reward

    def learned(state, action, true_reward):
        features = np.concatenate([env.observe(state), env.action_vector(action)])[None, :]
        return float(source.step_rewards(features)[0])
    return learned
