from typing import List, Sequence

import numpy as np

from prefnoise.model import LabeledPreference, NoiseScore
from prefnoise.noise.base_noise import BaseNoise, ThresholdNoise
from prefnoise.noise.noise_uncertainty import uncertainty_scores
from prefnoise.util.numeric import rank_normalize


def hybrid_scores(batch: Sequence,
                  alpha: float,
                  feature_scores: Sequence[float],
                  uncertainty_scores: Sequence[float]) -> List[NoiseScore]:
    """alpha * feature + (1 - alpha) * uncertainty, elementwise."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f'alpha must lie in [0, 1], got {alpha}')
    if not (len(batch) == len(feature_scores) == len(uncertainty_scores)):
        raise ValueError(f'score lengths differ: batch={len(batch)}, feature={len(feature_scores)}, '
                         f'uncertainty={len(uncertainty_scores)}')
    f = np.asarray(feature_scores, dtype=np.float64)
    u = np.asarray(uncertainty_scores, dtype=np.float64)
    combined = u if alpha == 0.0 else f if alpha == 1.0 else alpha * f + (1.0 - alpha) * u
    return [NoiseScore(pair_index=i, score=float(s)) for i, s in enumerate(combined)]


class NoiseHybrid(ThresholdNoise):
    """
    Mixes a behavioural component's flip priority with ensemble uncertainty.
    Both are rank-normalised to [0, 1] first, so the mix does not depend on units.
    """

    def __init__(self, spec, ensemble=None, encoder=None, component: BaseNoise = None, **kwargs):
        super().__init__(spec, ensemble, encoder, **kwargs)
        self.component = component

    def priority_scores(self, batch: Sequence[LabeledPreference]) -> np.ndarray:
        feature = rank_normalize(self.component.priority_scores(batch))
        uncertainty = rank_normalize([s.score for s in uncertainty_scores([p.pair for p in batch], self.ensemble)])
        return np.array([s.score for s in hybrid_scores(batch, self.spec.alpha, feature, uncertainty)])
