import logging
from typing import Optional

import numpy as np

from prefnoise.agent.policy import TabularPolicy
from prefnoise.agent.rewards import RewardSource, reward_table
from prefnoise.envs import EnvGridworld
from prefnoise.exceptions import TrainingDivergedError
from prefnoise.model import AgentConfig

logger = logging.getLogger(__name__)


def replay(q: np.ndarray, rewards: np.ndarray, successor: np.ndarray, seen: np.ndarray,
           alpha: float, gamma: float, sweeps: int) -> None:
    """In-place Q-learning updates over every transition in ``seen``, ``sweeps`` times."""
    s, a = np.nonzero(seen)
    if len(s) == 0:
        return
    for _ in range(sweeps):
        target = rewards[s, a] + gamma * q[successor[s, a]].max(axis=1)
        q[s, a] += alpha * (target - q[s, a])


def q_learning(env: EnvGridworld,
               reward_source: RewardSource,
               steps: int,
               rng: np.random.Generator,
               cfg: AgentConfig = AgentConfig(),
               q: Optional[np.ndarray] = None) -> TabularPolicy:
    """
    Epsilon-greedy tabular Q-learning over ``steps`` transitions, restarting
    every ``env.horizon`` steps. The reward comes only from ``reward_source``.

    The explorer breaks ties at random. After every episode the transitions
    seen so far are replayed ``cfg.replay_sweeps`` times; the gridworld is
    deterministic, so one stored successor per (state, action) is exact.
    """
    if steps < 0:
        raise ValueError(f'steps must be non-negative, got {steps}')
    rewards = reward_table(env, reward_source)
    q = np.zeros((env.n_states, env.n_actions)) if q is None else q.copy()
    seen = np.zeros(q.shape, dtype=bool)
    successor = np.zeros(q.shape, dtype=int)
    explorer = TabularPolicy(env, q, epsilon=cfg.epsilon, random_ties=True)
    state, t = env.reset(rng), 0
    for _ in range(steps):
        action = explorer.choose(state, rng)
        nxt, _ = env.step(state, action)
        target = rewards[state, action] + cfg.gamma * q[nxt].max()
        q[state, action] += cfg.q_alpha * (target - q[state, action])
        seen[state, action], successor[state, action] = True, nxt
        state, t = nxt, t + 1
        if t == env.horizon:
            replay(q, rewards, successor, seen, cfg.q_alpha, cfg.gamma, cfg.replay_sweeps)
            state, t = env.reset(rng), 0
    if t > 0:
        replay(q, rewards, successor, seen, cfg.q_alpha, cfg.gamma, cfg.replay_sweeps)
    policy = TabularPolicy(env, q)
    if not policy.is_finite():
        raise TrainingDivergedError('non-finite action values', {'steps': steps})
    logger.debug(f'q-learning: {steps} steps, {int(seen.sum())} transitions seen, max |Q| {np.abs(q).max():.4f}')
    return policy


def value_iteration(env: EnvGridworld, gamma: float, rewards: np.ndarray, tol: float = 1e-10,
                    max_iter: int = 10_000) -> np.ndarray:
    n_s, n_a = rewards.shape
    nxt = np.array([[env.step(s, a)[0] for a in range(n_a)] for s in range(n_s)])
    q = np.zeros((n_s, n_a))
    for _ in range(max_iter):
        updated = rewards + gamma * q.max(axis=1)[nxt]
        if np.max(np.abs(updated - q)) < tol:
            return updated
        q = updated
    return q
