from typing import List, Sequence

import numpy as np

from prefnoise.exceptions import NoiseDependencyError
from prefnoise.model import LabeledPreference, NoiseScore, TrajectoryPair
from prefnoise.noise.base_noise import ThresholdNoise
from prefnoise.reward.ensemble import ensemble_uncertainty


def uncertainty_scores(batch: Sequence[TrajectoryPair], ensemble) -> List[NoiseScore]:
    """Mean |G(first) - G(second)| over ensemble members; the smallest gaps are flipped first."""
    if ensemble is None:
        raise NoiseDependencyError('uncertainty noise needs a reward ensemble')
    return [NoiseScore(pair_index=i, score=ensemble_uncertainty(ensemble, pair)) for i, pair in enumerate(batch)]


class NoiseUncertainty(ThresholdNoise):

    def priority_scores(self, batch: Sequence[LabeledPreference]) -> np.ndarray:
        return np.array([s.score for s in uncertainty_scores([p.pair for p in batch], self.ensemble)])
