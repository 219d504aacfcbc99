from typing import Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class TrainConfig(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    learning_rate: float = Field(default=0.01, gt=0)
    batch_size: int = Field(default=32, gt=0)
    epochs_per_update: int = Field(default=50, ge=0)
    K: int = Field(default=3, gt=0)
    seed: int = Field(default=0, ge=0)
    hidden_dims: Tuple[int, ...] = (64, 64)
    optimizer: Literal['sgd', 'adam'] = 'sgd'
    momentum: float = Field(default=0.9, ge=0, lt=1)


class EncoderConfig(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    input_dim: int = Field(default=0, ge=0)
    embedding_dim: int = Field(default=8, ge=1)
    hidden_dims: Tuple[int, ...] = (64,)
    learning_rate: float = Field(default=1e-4, gt=0)
    epochs: int = Field(default=200, ge=0)
    batch_size: int = Field(default=32, ge=1)
    kl_weight: float = Field(default=1.0, ge=0)
    reconstruction_weight: float = Field(default=1.0, ge=0)
    seed: int = Field(default=0, ge=0)

    @model_validator(mode='after')
    def _check_dims(self):
        if any(h < 1 for h in self.hidden_dims):
            raise ValueError(f'hidden dims must be >= 1, got {self.hidden_dims}')
        # input_dim 0 means "infer from the training trajectories"
        if self.input_dim and self.embedding_dim >= self.input_dim:
            raise ValueError(f'embedding_dim ({self.embedding_dim}) must be smaller than input_dim ({self.input_dim})')
        return self


class AgentConfig(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    q_alpha: float = Field(default=0.1, gt=0, le=1)
    epsilon: float = Field(default=0.1, ge=0, le=1)
    gamma: float = Field(default=0.95, gt=0, lt=1)
    replay_sweeps: int = Field(default=4, ge=0)
    cem_population: int = Field(default=64, ge=2)
    cem_elite: int = Field(default=8, ge=1)
    cem_init_std: float = Field(default=0.5, gt=0)
    cem_episodes: int = Field(default=2, ge=1)
    policy_std: float = Field(default=0.05, gt=0)

    @model_validator(mode='after')
    def _check_elite(self):
        if self.cem_elite > self.cem_population:
            raise ValueError('cem_elite cannot exceed cem_population')
        return self
