import math
from typing import Sequence

import numpy as np

from prefnoise.exceptions import ConfigurationError
from prefnoise.model import LabeledPreference, Trajectory, TrajectoryPair
from prefnoise.noise.base_noise import ProbabilisticNoise
from prefnoise.util.numeric import sigmoid


def feature_magnitude(traj: Trajectory, subset: Sequence[int]) -> float:
    """Time-averaged L2 norm of the chosen (state, action) step-feature columns."""
    features = traj.step_features()
    subset = list(subset)
    if not subset:
        raise ConfigurationError('feature subset must not be empty')
    width = features.shape[1]
    bad = [i for i in subset if not -width <= i < width]
    if bad:
        raise ConfigurationError(f'feature indices {bad} out of range for {width} step features')
    return float(np.mean(np.linalg.norm(features[:, subset], axis=1)))


def magnitude_flip_prob(pair: TrajectoryPair, beta: float, subset: Sequence[int]) -> float:
    """sigma(beta * log(1 + |delta|) * sign(delta)), delta the difference in feature magnitude."""
    if beta <= 0:
        raise ConfigurationError(f'beta must be positive, got {beta}')
    delta = feature_magnitude(pair.first, subset) - feature_magnitude(pair.second, subset)
    return sigmoid(beta * math.log1p(abs(delta)) * float(np.sign(delta)))


class NoiseMagnitude(ProbabilisticNoise):
    default_cap_from_rate = True

    def flip_probs(self, batch: Sequence[LabeledPreference]) -> np.ndarray:
        return np.array([magnitude_flip_prob(s.pair, self.spec.beta, self.spec.feature_subset) for s in batch])

    def priority_scores(self, batch: Sequence[LabeledPreference]) -> np.ndarray:
        return 1.0 - self.flip_probs(batch)
