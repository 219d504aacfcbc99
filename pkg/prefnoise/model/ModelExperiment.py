from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from prefnoise.model.ModelDenoise import DenoiserConfig
from prefnoise.model.ModelEnv import EnvSpec
from prefnoise.model.ModelNoise import NoiseKind, NoiseModelSpec
from prefnoise.model.ModelRemote import RemoteTeacherConfig
from prefnoise.model.ModelTrain import AgentConfig, EncoderConfig, TrainConfig

SCHEMA_VERSION = 1

CSV_HEADER = ('seed', 'round', 'noise_kind', 'target_rate', 'realized_rate', 'denoiser_precision',
              'denoiser_recall', 'reward_label_accuracy', 'mean_return', 'std_return')


class TeacherConfig(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    kind: Literal['scripted', 'remote'] = 'scripted'
    remote: Optional[RemoteTeacherConfig] = None

    @model_validator(mode='after')
    def _check_remote(self):
        if self.kind == 'remote' and self.remote is None:
            raise ValueError('remote teacher requires a "remote" section')
        return self


class ProtocolConfig(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    queries_per_round: int = Field(default=50, ge=1)
    rounds: int = Field(default=20, ge=1)
    seeds: List[int] = Field(default_factory=lambda: [0, 1, 2, 3, 4], min_length=1)
    output_path: str = 'results/run.csv'
    rollouts_per_round: int = Field(default=40, ge=2)
    heldout_pairs: int = Field(default=200, ge=1)
    eval_episodes: int = Field(default=50, ge=1)
    policy_steps: int = Field(default=50000, ge=0)
    tie_tolerance: float = Field(default=0.0, ge=0)
    recompute_threshold: Literal['per_batch', 'global'] = 'per_batch'


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    schema_version: int = SCHEMA_VERSION
    env: EnvSpec = EnvSpec()
    noise: NoiseModelSpec = NoiseModelSpec(kind=NoiseKind.UNIFORM)
    teacher: TeacherConfig = TeacherConfig()
    denoiser: Optional[DenoiserConfig] = None
    train: TrainConfig = TrainConfig()
    protocol: ProtocolConfig = ProtocolConfig()
    encoder: EncoderConfig = EncoderConfig()
    agent: AgentConfig = AgentConfig()

    @model_validator(mode='after')
    def _check_version(self):
        if self.schema_version != SCHEMA_VERSION:
            raise ValueError(f'unsupported schema_version {self.schema_version}, expected {SCHEMA_VERSION}')
        return self

    @property
    def queries_per_round(self) -> int:
        return self.protocol.queries_per_round

    @property
    def rounds(self) -> int:
        return self.protocol.rounds

    @property
    def seeds(self) -> List[int]:
        return self.protocol.seeds

    @property
    def output_path(self) -> str:
        return self.protocol.output_path


class ExperimentRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    seed: int
    round: int
    noise_kind: str
    target_rate: float = Field(ge=0, le=1)
    realized_rate: float = Field(ge=0, le=1)
    denoiser_precision: float = Field(ge=0, le=1)
    denoiser_recall: float = Field(ge=0, le=1)
    reward_label_accuracy: float = Field(ge=0, le=1)
    mean_return: float
    std_return: float = Field(ge=0)

    def to_row(self) -> List[str]:
        row = []
        for name in CSV_HEADER:
            value = getattr(self, name)
            row.append(f'{value:.6f}' if isinstance(value, float) else str(value))
        return row
