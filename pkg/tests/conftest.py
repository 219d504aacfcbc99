from typing import Dict, Optional, Sequence

import numpy as np
import pytest

from prefnoise.agent import RandomPolicy
from prefnoise.envs import collect, make_env
from prefnoise.harness import labeled_pairs
from prefnoise.model import EnvSpec, LabeledPreference, PreferenceLabel, TrainConfig, Trajectory, TrajectoryPair
from prefnoise.reward import RewardEnsemble, train_update
from prefnoise.util.numeric import pairwise_softmax


def make_traj(traj_id: int,
              rewards: Sequence[float] = (0.0, 0.0),
              states: Optional[np.ndarray] = None,
              actions: Optional[np.ndarray] = None,
              state_dim: int = 3,
              action_dim: int = 2,
              kind: str = 'pointmass') -> Trajectory:
    rewards = np.asarray(rewards, dtype=np.float64)
    horizon = len(rewards)
    if states is None:
        states = np.zeros((horizon + 1, state_dim))
    if actions is None:
        actions = np.zeros((horizon, action_dim))
    return Trajectory(states=np.asarray(states, dtype=np.float64),
                      actions=np.asarray(actions, dtype=np.float64),
                      true_rewards=rewards,
                      id=traj_id,
                      kind=kind)


def make_pair(first_return: float, second_return: float, ids=(0, 1)) -> TrajectoryPair:
    return TrajectoryPair(first=make_traj(ids[0], [first_return, 0.0]),
                          second=make_traj(ids[1], [second_return, 0.0]))


def clean(pair: TrajectoryPair, label: PreferenceLabel = PreferenceLabel.FIRST) -> LabeledPreference:
    return LabeledPreference.clean(pair, label)


class FixedReturns:
    """Stand-in reward model whose member returns are looked up by trajectory id."""

    def __init__(self, returns: Dict[int, Sequence[float]]):
        self.returns = {k: np.atleast_1d(np.asarray(v, dtype=np.float64)) for k, v in returns.items()}

    def member_returns(self, traj: Trajectory) -> np.ndarray:
        return self.returns[traj.id]

    def predicted_return(self, traj: Trajectory, member=None) -> float:
        return float(np.mean(self.returns[traj.id]))

    def bt_prob(self, pair: TrajectoryPair, member=None) -> float:
        return pairwise_softmax(self.predicted_return(pair.first), self.predicted_return(pair.second))


class FixedProbs:
    """Stand-in reward model with a scripted P(first preferred) per pair key."""

    def __init__(self, probs: Dict[tuple, float]):
        self.probs = probs

    def bt_prob(self, pair: TrajectoryPair, member=None) -> float:
        return self.probs[pair.key]


@pytest.fixture
def grid_spec() -> EnvSpec:
    return EnvSpec(kind='gridworld', size=5, horizon=20)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


def tiny_config_dict(output_path: str, **protocol) -> dict:
    """Experiment config small enough to run a few rounds in well under a second per seed."""
    return {
        'env': {'kind': 'gridworld', 'size': 3, 'horizon': 6},
        'noise': {'kind': 'uniform', 'target_rate': 0.2},
        'train': {'K': 2, 'hidden_dims': [8], 'epochs_per_update': 2, 'batch_size': 8},
        'encoder': {'embedding_dim': 4, 'hidden_dims': [8], 'epochs': 3, 'batch_size': 8},
        'agent': {'cem_population': 8, 'cem_elite': 2},
        'protocol': {'queries_per_round': 6, 'rounds': 2, 'seeds': [0, 1], 'rollouts_per_round': 8,
                     'heldout_pairs': 10, 'eval_episodes': 5, 'policy_steps': 300,
                     'output_path': output_path, **protocol},
    }


def fit_gridworld_ensemble(seed: int, n_labels: int = 200, epochs: int = 100):
    """8x8 gridworld reward ensemble fit to clean labels on random rollouts; returns (env, ensemble, report, rng)."""
    env = make_env(EnvSpec(kind='gridworld', size=8, horizon=20))
    rng = np.random.default_rng(seed)
    train = labeled_pairs(collect(env, RandomPolicy(env), 400, rng), n_labels, rng, env.gamma, 0.0)
    ensemble = RewardEnsemble(env.step_dim, TrainConfig(K=3, epochs_per_update=epochs, seed=seed))
    ensemble, report = train_update(ensemble, train)
    return env, ensemble, report, rng
