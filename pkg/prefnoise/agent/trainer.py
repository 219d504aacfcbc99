import numpy as np

from prefnoise.agent.cem import cem
from prefnoise.agent.q_learning import q_learning
from prefnoise.agent.rewards import RewardSource
from prefnoise.envs import EnvGridworld, EnvPointmass, Environment
from prefnoise.exceptions import ConfigurationError
from prefnoise.model import AgentConfig


def train_policy(env: Environment,
                 reward_source: RewardSource,
                 steps: int,
                 rng: np.random.Generator,
                 cfg: AgentConfig = AgentConfig()):
    """``reward_source`` is ``'true'`` or any model with ``step_rewards`` (a RewardNet or RewardEnsemble)."""
    if isinstance(env, EnvGridworld):
        return q_learning(env, reward_source, steps, rng, cfg)
    elif isinstance(env, EnvPointmass):
        return cem(env, reward_source, steps, rng, cfg)
    raise ConfigurationError(f'no policy optimiser for {type(env).__name__}')
