from typing import Tuple

import numpy as np

from prefnoise.envs.base_env import Environment
from prefnoise.model import EnvSpec

# up, down, left, right
MOVES = ((-1, 0), (1, 0), (0, -1), (0, 1))


class EnvGridworld(Environment):
    """
    size x size grid, goal in the bottom-right corner. Reward +1 whenever the
    next state is the goal; moves into a wall leave the agent in place.
    """

    def __init__(self, spec: EnvSpec):
        super().__init__(spec)
        self.size = spec.size
        self.goal = self.n_states - 1

    @property
    def n_states(self) -> int:
        return self.size * self.size

    @property
    def n_actions(self) -> int:
        return len(MOVES)

    @property
    def state_dim(self) -> int:
        # one-hot cell code, then (row, col) scaled to [0, 1]
        return self.n_states + 2

    @property
    def action_dim(self) -> int:
        return self.n_actions

    def cell(self, state: int) -> Tuple[int, int]:
        return divmod(int(state), self.size)

    def reset(self, rng: np.random.Generator) -> int:
        # the goal is the last index, so this never starts on it
        return int(rng.integers(self.n_states - 1))

    def step(self, state: int, action: int) -> Tuple[int, float]:
        row, col = self.cell(state)
        dr, dc = MOVES[int(action)]
        row = min(max(row + dr, 0), self.size - 1)
        col = min(max(col + dc, 0), self.size - 1)
        nxt = row * self.size + col
        return nxt, 1.0 if nxt == self.goal else 0.0

    def observe(self, state: int) -> np.ndarray:
        obs = np.zeros(self.state_dim)
        obs[int(state)] = 1.0
        obs[self.n_states:] = np.array(self.cell(state)) / (self.size - 1)
        return obs

    def state_from_observation(self, observation: np.ndarray) -> int:
        return int(np.argmax(observation[:self.n_states]))

    def action_vector(self, action: int) -> np.ndarray:
        vec = np.zeros(self.n_actions)
        vec[int(action)] = 1.0
        return vec

    def goal_distance(self, state: int) -> int:
        row, col = self.cell(state)
        g_row, g_col = self.cell(self.goal)
        return abs(g_row - row) + abs(g_col - col)
