import abc
from typing import Any, Protocol, Tuple

import numpy as np

from prefnoise.model import EnvSpec


class Policy(Protocol):
    def act(self, observation: np.ndarray, rng: np.random.Generator) -> Any:
        ...


class Environment(abc.ABC):
    """
    Deterministic transition function with a hidden ground-truth reward.

    Raw states are whatever the subclass finds convenient; learners only ever
    see ``observe(state)`` and ``action_vector(action)``.
    """

    def __init__(self, spec: EnvSpec):
        self.spec = spec

    @property
    def horizon(self) -> int:
        return self.spec.horizon

    @property
    def gamma(self) -> float:
        return self.spec.gamma

    @property
    @abc.abstractmethod
    def state_dim(self) -> int:
        pass

    @property
    @abc.abstractmethod
    def action_dim(self) -> int:
        pass

    @abc.abstractmethod
    def reset(self, rng: np.random.Generator) -> Any:
        """Sample a start state."""
        pass

    @abc.abstractmethod
    def step(self, state: Any, action: Any) -> Tuple[Any, float]:
        """Return (next_state, true_reward)."""
        pass

    @abc.abstractmethod
    def observe(self, state: Any) -> np.ndarray:
        pass

    @abc.abstractmethod
    def action_vector(self, action: Any) -> np.ndarray:
        pass

    @property
    def step_dim(self) -> int:
        return self.state_dim + self.action_dim
