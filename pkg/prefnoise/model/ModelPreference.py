from dataclasses import dataclass, replace
from enum import Enum

from prefnoise.model.ModelEnv import TrajectoryPair


class PreferenceLabel(Enum):
    FIRST = 1
    SECOND = 0

    def reversed(self) -> 'PreferenceLabel':
        return PreferenceLabel.SECOND if self is PreferenceLabel.FIRST else PreferenceLabel.FIRST

    @property
    def y(self) -> float:
        return float(self.value)


class Tie(Enum):
    """Equal returns; the pair is discarded before labeling."""
    TIE = 'tie'


TIE = Tie.TIE


@dataclass(frozen=True, eq=False)
class LabeledPreference:
    pair: TrajectoryPair
    observed: PreferenceLabel
    ground_truth: PreferenceLabel
    flipped: bool = False
    flip_prob: float = 0.0

    def __post_init__(self):
        if self.flipped != (self.observed is not self.ground_truth):
            raise ValueError('flipped must be true exactly when observed differs from ground_truth')
        if not 0.0 <= self.flip_prob <= 1.0:
            raise ValueError(f'flip_prob must lie in [0, 1], got {self.flip_prob}')

    @classmethod
    def clean(cls, pair: TrajectoryPair, label: PreferenceLabel) -> 'LabeledPreference':
        return cls(pair=pair, observed=label, ground_truth=label)

    @property
    def y(self) -> float:
        return self.observed.y

    def flip(self) -> 'LabeledPreference':
        observed = self.observed.reversed()
        return replace(self, observed=observed, flipped=observed is not self.ground_truth)
