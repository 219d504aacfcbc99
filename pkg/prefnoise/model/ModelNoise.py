from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class NoiseKind(str, Enum):
    UNIFORM = 'uniform'
    SIMILARITY_L2 = 'similarity_l2'
    SIMILARITY_LATENT = 'similarity_latent'
    MAGNITUDE = 'magnitude'
    UNCERTAINTY = 'uncertainty'
    ADVERSARIAL = 'adversarial'
    HYBRID = 'hybrid'


FEATURE_KINDS = {NoiseKind.SIMILARITY_L2, NoiseKind.SIMILARITY_LATENT, NoiseKind.MAGNITUDE}
THRESHOLD_KINDS = {NoiseKind.UNCERTAINTY, NoiseKind.ADVERSARIAL, NoiseKind.HYBRID}
PROBABILISTIC_KINDS = {NoiseKind.SIMILARITY_L2, NoiseKind.SIMILARITY_LATENT, NoiseKind.MAGNITUDE}


class NoiseModelSpec(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    kind: NoiseKind
    target_rate: float = Field(default=0.0, ge=0.0, le=1.0)
    beta: Optional[float] = Field(default=None, gt=0.0)
    alpha: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    feature_subset: Optional[List[int]] = None
    component_f: Optional['NoiseModelSpec'] = None
    max_flips_per_batch: Optional[int] = Field(default=None, ge=0)
    calibrate: bool = True
    name: Optional[str] = None

    @model_validator(mode='after')
    def _check_kind_fields(self):
        kind = self.kind
        if kind is NoiseKind.MAGNITUDE:
            if self.beta is None or not self.feature_subset:
                raise ValueError('magnitude noise requires beta and a non-empty feature_subset')
        elif self.beta is not None or self.feature_subset is not None:
            raise ValueError(f'beta/feature_subset only apply to magnitude noise, not {kind.value}')
        if kind is NoiseKind.HYBRID:
            if self.alpha is None or self.component_f is None:
                raise ValueError('hybrid noise requires alpha and component_f')
            if self.component_f.kind not in FEATURE_KINDS:
                raise ValueError(f'hybrid component_f must be one of '
                                 f'{sorted(k.value for k in FEATURE_KINDS)}, got {self.component_f.kind.value}')
        elif self.alpha is not None or self.component_f is not None:
            raise ValueError(f'alpha/component_f only apply to hybrid noise, not {kind.value}')
        return self

    @property
    def label(self) -> str:
        return self.name or self.kind.value

    @property
    def needs_ensemble(self) -> bool:
        return self.kind in THRESHOLD_KINDS

    @property
    def needs_encoder(self) -> bool:
        if self.kind is NoiseKind.HYBRID:
            return self.component_f.needs_encoder
        return self.kind is NoiseKind.SIMILARITY_LATENT


NoiseModelSpec.model_rebuild()


@dataclass(frozen=True)
class NoiseScore:
    pair_index: int
    score: float
    flip_prob: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.flip_prob <= 1.0:
            raise ValueError(f'flip_prob must lie in [0, 1], got {self.flip_prob}')
