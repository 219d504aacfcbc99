import logging

import numpy as np

from prefnoise.agent.policy import LinearGaussianPolicy
from prefnoise.agent.rewards import RewardSource, reward_fn
from prefnoise.envs import Environment
from prefnoise.model import AgentConfig

logger = logging.getLogger(__name__)


def policy_score(env: Environment, policy: LinearGaussianPolicy, reward, episodes: int,
                 rng: np.random.Generator) -> float:
    total = 0.0
    for _ in range(episodes):
        state = env.reset(rng)
        for _ in range(env.horizon):
            action = policy.act(env.observe(state), rng)
            nxt, true_reward = env.step(state, action)
            total += reward(state, action, true_reward)
            state = nxt
    return total / episodes


def cem(env: Environment,
        reward_source: RewardSource,
        steps: int,
        rng: np.random.Generator,
        cfg: AgentConfig = AgentConfig()) -> LinearGaussianPolicy:
    """
    Cross-entropy search over linear policies. ``steps`` is an environment-step
    budget; each iteration spends population * episodes * horizon of it.
    """
    if steps < 0:
        raise ValueError(f'steps must be non-negative, got {steps}')
    reward = reward_fn(env, reward_source)
    initial = LinearGaussianPolicy.zeros(env.state_dim, env.action_dim, cfg.policy_std)
    mean, std = initial.flat(), np.full(initial.flat().shape, cfg.cem_init_std)
    iterations = steps // (cfg.cem_population * cfg.cem_episodes * env.horizon)
    for it in range(iterations):
        candidates = mean + std * rng.standard_normal((cfg.cem_population, len(mean)))
        scores = np.array([policy_score(env,
                                        LinearGaussianPolicy.from_flat(c, env.state_dim, env.action_dim,
                                                                       cfg.policy_std),
                                        reward, cfg.cem_episodes, rng)
                           for c in candidates])
        # stable so equal scores keep population order
        elite = candidates[np.argsort(-scores, kind='stable')[:cfg.cem_elite]]
        mean, std = elite.mean(axis=0), elite.std(axis=0) + 1e-3
        logger.debug(f'cem iteration {it}: best {scores.max():.4f} mean {scores.mean():.4f}')
    return LinearGaussianPolicy.from_flat(mean, env.state_dim, env.action_dim, cfg.policy_std)
