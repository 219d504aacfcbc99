from typing import List, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from prefnoise.envs.base_env import Environment, Policy
from prefnoise.envs.env_gridworld import EnvGridworld
from prefnoise.envs.env_pointmass import EnvPointmass
from prefnoise.exceptions import ConfigurationError
from prefnoise.model import EnvSpec, Trajectory, TrajectoryPair


ID_SPACE = 2 ** 62


def make_env(spec: EnvSpec | dict) -> Environment:
    try:
        spec = EnvSpec.model_validate(spec if isinstance(spec, dict) else spec.model_dump())
    except ValidationError as e:
        raise ConfigurationError(f'invalid environment spec: {e}') from None
    if spec.kind == 'gridworld':
        return EnvGridworld(spec)
    elif spec.kind == 'pointmass':
        return EnvPointmass(spec)
    raise ConfigurationError(f'unknown environment kind {spec.kind!r}')


def rollout(env: Environment,
            policy: Policy,
            rng: np.random.Generator,
            traj_id: Optional[int] = None,
            start=None) -> Trajectory:
    """Run ``policy`` for exactly ``env.horizon`` steps from a sampled (or given) start."""
    if traj_id is None:
        traj_id = int(rng.integers(ID_SPACE))
    state = env.reset(rng) if start is None else start
    states = [env.observe(state)]
    actions, rewards = [], []
    for _ in range(env.horizon):
        action = policy.act(states[-1], rng)
        state, reward = env.step(state, action)
        actions.append(env.action_vector(action))
        rewards.append(reward)
        states.append(env.observe(state))
    return Trajectory(states=np.stack(states),
                      actions=np.stack(actions),
                      true_rewards=np.asarray(rewards, dtype=np.float64),
                      id=traj_id,
                      kind=env.spec.kind)


def collect(env: Environment, policy: Policy, n: int, rng: np.random.Generator, first_id: int = 0) -> List[Trajectory]:
    return [rollout(env, policy, rng, traj_id=first_id + i) for i in range(n)]


def true_return(traj: Trajectory, gamma: float = 1.0) -> float:
    discounts = gamma ** np.arange(traj.horizon)
    return float(discounts @ traj.true_rewards)


def sample_pairs(buffer: Sequence[Trajectory], n: int, rng: np.random.Generator) -> List[TrajectoryPair]:
    """``n`` pairs, each drawn uniformly without replacement from ``buffer``."""
    if len(buffer) < 2:
        raise ConfigurationError(f'need at least 2 trajectories to form a pair, buffer has {len(buffer)}')
    if n < 0:
        raise ConfigurationError(f'n must be non-negative, got {n}')
    pairs = []
    for _ in range(n):
        i, j = rng.choice(len(buffer), size=2, replace=False)
        pairs.append(TrajectoryPair(first=buffer[int(i)], second=buffer[int(j)]))
    return pairs
