from typing import Tuple

import numpy as np

from prefnoise.envs.base_env import Environment
from prefnoise.model import EnvSpec


class EnvPointmass(Environment):
    """Point in [-b, b]^2 driven by a bounded velocity; reward is -||s'||^2."""

    def __init__(self, spec: EnvSpec):
        super().__init__(spec)
        self.bounds = spec.bounds
        self.max_speed = spec.max_speed

    @property
    def state_dim(self) -> int:
        return 2

    @property
    def action_dim(self) -> int:
        return 2

    def reset(self, rng: np.random.Generator) -> np.ndarray:
        return rng.uniform(-self.bounds, self.bounds, size=2)

    def step(self, state: np.ndarray, action) -> Tuple[np.ndarray, float]:
        velocity = self.action_vector(action)
        nxt = np.clip(np.asarray(state, dtype=np.float64) + velocity, -self.bounds, self.bounds)
        return nxt, -float(nxt @ nxt)

    def observe(self, state: np.ndarray) -> np.ndarray:
        return np.array(state, dtype=np.float64)

    def action_vector(self, action) -> np.ndarray:
        return np.clip(np.asarray(action, dtype=np.float64).reshape(2), -self.max_speed, self.max_speed)
