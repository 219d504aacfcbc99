from typing import Literal, Optional, Sequence

import numpy as np

from prefnoise.exceptions import NoiseDependencyError
from prefnoise.latent import Encoder, encode
from prefnoise.model import LabeledPreference, NoiseKind, TrajectoryPair
from prefnoise.noise.base_noise import ProbabilisticNoise


def trajectory_distance(pair: TrajectoryPair,
                        metric: Literal['l2', 'latent'] = 'l2',
                        encoder: Optional[Encoder] = None) -> float:
    """L2 distance between flattened (state, action) sequences, or between embeddings."""
    if metric == 'latent':
        if encoder is None:
            raise NoiseDependencyError('latent similarity noise needs a trained encoder')
        return float(np.linalg.norm(encode(encoder, pair.first) - encode(encoder, pair.second)))
    if metric != 'l2':
        raise ValueError(f'unknown distance metric {metric!r}')
    return float(np.linalg.norm(pair.first.flat_features() - pair.second.flat_features()))


def distance_to_prob(distance: float) -> float:
    if distance == 0.0:
        return 1.0
    return min(1.0, 1.0 / distance ** 2)


def similarity_flip_prob(pair: TrajectoryPair,
                         metric: Literal['l2', 'latent'] = 'l2',
                         encoder: Optional[Encoder] = None) -> float:
    """min(1, 1 / D^2): the closer the two segments, the likelier a flip."""
    return distance_to_prob(trajectory_distance(pair, metric, encoder))


class NoiseSimilarity(ProbabilisticNoise):

    @property
    def metric(self) -> str:
        return 'latent' if self.spec.kind is NoiseKind.SIMILARITY_LATENT else 'l2'

    def distances(self, batch: Sequence[LabeledPreference]) -> np.ndarray:
        return np.array([trajectory_distance(s.pair, self.metric, self.encoder) for s in batch])

    def flip_probs(self, batch: Sequence[LabeledPreference]) -> np.ndarray:
        return np.array([distance_to_prob(d) for d in self.distances(batch)])

    def priority_scores(self, batch: Sequence[LabeledPreference]) -> np.ndarray:
        return self.distances(batch)
