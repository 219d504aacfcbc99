from typing import List, Sequence

import numpy as np

from prefnoise.model import LabeledPreference
from prefnoise.noise.base_noise import BaseNoise


class NoiseUniform(BaseNoise):
    """Constant flip probability epsilon, one Bernoulli draw per pair."""

    def priority_scores(self, batch: Sequence[LabeledPreference]) -> np.ndarray:
        return np.zeros(len(batch))

    def apply(self, batch: Sequence[LabeledPreference], rng: np.random.Generator) -> List[LabeledPreference]:
        return self._relabel(batch, np.full(len(batch), self.spec.target_rate), rng)
