from dataclasses import dataclass
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class EnvSpec(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    kind: Literal['gridworld', 'pointmass'] = 'gridworld'
    size: int = 8
    bounds: float = Field(default=1.0, gt=0)
    max_speed: float = Field(default=0.1, gt=0)
    horizon: int = 20
    gamma: float = 1.0
    seed: int = Field(default=0, ge=0)

    @model_validator(mode='after')
    def _check(self):
        if self.horizon < 2:
            raise ValueError(f'horizon must be >= 2, got {self.horizon}')
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError(f'gamma must lie in (0, 1], got {self.gamma}')
        if self.kind == 'gridworld' and self.size < 3:
            raise ValueError(f'gridworld size must be >= 3, got {self.size}')
        return self


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Fixed-length segment. ``true_rewards`` is read by teachers and metrics only.
    """
    states: np.ndarray
    actions: np.ndarray
    true_rewards: np.ndarray
    id: int
    kind: str = 'gridworld'

    def __post_init__(self):
        if len(self.states) != len(self.actions) + 1:
            raise ValueError(f'states ({len(self.states)}) must be one longer than actions ({len(self.actions)})')
        if len(self.true_rewards) != len(self.actions):
            raise ValueError('true_rewards and actions must have equal length')

    @property
    def horizon(self) -> int:
        return len(self.actions)

    def step_features(self) -> np.ndarray:
        """(H, state_dim + action_dim) matrix of the (s_t, a_t) pairs."""
        return np.concatenate([self.states[:-1], self.actions], axis=1)

    def flat_features(self) -> np.ndarray:
        return np.concatenate([self.states.ravel(), self.actions.ravel()])


@dataclass(frozen=True, eq=False)
class TrajectoryPair:
    first: Trajectory
    second: Trajectory

    def __post_init__(self):
        if self.first.id == self.second.id:
            raise ValueError(f'pair needs two distinct trajectories, both have id {self.first.id}')

    def swapped(self) -> 'TrajectoryPair':
        return TrajectoryPair(first=self.second, second=self.first)

    @property
    def key(self) -> tuple:
        return self.first.id, self.second.id

