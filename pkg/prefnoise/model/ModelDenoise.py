from dataclasses import dataclass
from typing import Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field


class DenoiserConfig(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    base_threshold: float = Field(default=1.0, gt=0)
    threshold_schedule: Literal['constant', 'decaying'] = 'constant'
    decay: float = Field(default=0.05, ge=0)
    flip_correction: bool = True
    flip_delta: float = Field(default=0.1, gt=0, lt=1)


@dataclass(frozen=True)
class DenoiseReport:
    trusted: Tuple[int, ...]
    suspect: Tuple[int, ...]
    flipped: Tuple[int, ...]
    precision: float
    recall: float
    threshold: float = 0.0

    def __post_init__(self):
        if set(self.trusted) & set(self.suspect):
            raise ValueError('trusted and suspect sets overlap')
        if not set(self.flipped) <= set(self.suspect):
            raise ValueError('flipped samples must be suspects')
