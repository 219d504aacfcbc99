from typing import List, Sequence

import numpy as np

from prefnoise.exceptions import NoiseDependencyError
from prefnoise.model import LabeledPreference, NoiseScore, PreferenceLabel
from prefnoise.noise.base_noise import ThresholdNoise
from prefnoise.util.numeric import ONE_HOT_SMOOTHING, kl_divergence, smoothed_one_hot


def wrong_teacher_kl(model_p_first: float, ground_truth: PreferenceLabel, delta: float = ONE_HOT_SMOOTHING) -> float:
    """KL between the (smoothed) always-wrong teacher and the model's preference distribution."""
    wrong = smoothed_one_hot(ground_truth.reversed() is PreferenceLabel.FIRST, delta)
    return kl_divergence(wrong, np.array([model_p_first, 1.0 - model_p_first]))


def adversarial_scores(batch: Sequence[LabeledPreference], ensemble) -> List[NoiseScore]:
    """Needs ground truth: pairs where the model already leans towards the wrong label score lowest."""
    if ensemble is None:
        raise NoiseDependencyError('adversarial noise needs a reward ensemble')
    return [NoiseScore(pair_index=i, score=wrong_teacher_kl(ensemble.bt_prob(s.pair), s.ground_truth))
            for i, s in enumerate(batch)]


class NoiseAdversarial(ThresholdNoise):

    def priority_scores(self, batch: Sequence[LabeledPreference]) -> np.ndarray:
        return np.array([s.score for s in adversarial_scores(batch, self.ensemble)])
