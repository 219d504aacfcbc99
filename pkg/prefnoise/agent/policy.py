from dataclasses import dataclass
from typing import Optional

import numpy as np

from prefnoise.envs import EnvGridworld


class RandomPolicy:
    """Uniform over gridworld moves, or uniform velocity in the pointmass speed box."""

    def __init__(self, env):
        self.env = env

    def act(self, observation: np.ndarray, rng: np.random.Generator):
        if isinstance(self.env, EnvGridworld):
            return int(rng.integers(self.env.n_actions))
        return rng.uniform(-self.env.max_speed, self.env.max_speed, size=self.env.action_dim)


@dataclass
class TabularPolicy:
    """
    Greedy over an action-value table; ``epsilon`` adds random moves. Ties go
    to the lowest action index unless ``random_ties`` is set.
    """
    env: EnvGridworld
    q: np.ndarray
    epsilon: float = 0.0
    random_ties: bool = False

    def __post_init__(self):
        if self.q.shape != (self.env.n_states, self.env.n_actions):
            raise ValueError(f'q table shape {self.q.shape} does not match the environment')

    def greedy(self, state: int, rng: Optional[np.random.Generator] = None) -> int:
        values = self.q[state]
        if rng is None or not self.random_ties:
            # argmax returns the first maximum
            return int(np.argmax(values))
        best = np.flatnonzero(values == values.max())
        # empty once a NaN has entered the row
        return int(rng.choice(best)) if len(best) else int(np.argmax(values))

    def choose(self, state: int, rng: np.random.Generator) -> int:
        if self.epsilon > 0 and rng.random() < self.epsilon:
            return int(rng.integers(self.env.n_actions))
        return self.greedy(state, rng)

    def act(self, observation: np.ndarray, rng: np.random.Generator) -> int:
        return self.choose(self.env.state_from_observation(observation), rng)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.q)))


@dataclass
class LinearGaussianPolicy:
    """a ~ N(W s + b, std^2 I), clipped by the environment to its speed box."""
    weights: np.ndarray
    bias: np.ndarray
    std: float = 0.05
    deterministic: bool = False

    def __post_init__(self):
        if self.std <= 0:
            raise ValueError(f'std must be positive, got {self.std}')

    @classmethod
    def zeros(cls, state_dim: int, action_dim: int, std: float = 0.05) -> 'LinearGaussianPolicy':
        return cls(np.zeros((action_dim, state_dim)), np.zeros(action_dim), std)

    @classmethod
    def from_flat(cls, theta: np.ndarray, state_dim: int, action_dim: int, std: float = 0.05,
                  deterministic: bool = False) -> 'LinearGaussianPolicy':
        w = theta[:action_dim * state_dim].reshape(action_dim, state_dim)
        return cls(w.copy(), theta[action_dim * state_dim:].copy(), std, deterministic)

    def flat(self) -> np.ndarray:
        return np.concatenate([self.weights.ravel(), self.bias])

    def mean(self, observation: np.ndarray) -> np.ndarray:
        return self.weights @ observation + self.bias

    def act(self, observation: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        mean = self.mean(observation)
        if self.deterministic:
            return mean
        return mean + self.std * rng.standard_normal(mean.shape)
