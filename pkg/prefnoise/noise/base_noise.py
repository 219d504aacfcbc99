import abc
import logging
from dataclasses import replace
from typing import List, Optional, Sequence

import numpy as np

from prefnoise.model import LabeledPreference, NoiseModelSpec
from prefnoise.noise.calibration import (apply_threshold, calibrate_threshold, cap_flips, rescale_to_rate,
                                         select_flips)
from prefnoise.teachers.oracle import noisy_label

logger = logging.getLogger(__name__)


class BaseNoise(abc.ABC):
    def __init__(self, spec: NoiseModelSpec, ensemble=None, encoder=None, **kwargs):
        self.spec = spec
        self.ensemble = ensemble
        self.encoder = encoder
        self.kwargs = kwargs

    @abc.abstractmethod
    def priority_scores(self, batch: Sequence[LabeledPreference]) -> np.ndarray:
        """Per-pair scores where lower means "flip earlier"."""
        pass

    @abc.abstractmethod
    def apply(self, batch: Sequence[LabeledPreference], rng: np.random.Generator) -> List[LabeledPreference]:
        pass

    @staticmethod
    def _relabel(batch: Sequence[LabeledPreference], flip_probs: np.ndarray,
                 rng: np.random.Generator) -> List[LabeledPreference]:
        """Flips are drawn against ``observed``; ``flipped`` still means the result differs from ``ground_truth``."""
        relabeled = []
        for s, p in zip(batch, flip_probs):
            drawn = noisy_label(s.pair, float(p), s.observed, rng)
            relabeled.append(replace(drawn, ground_truth=s.ground_truth,
                                     flipped=drawn.observed is not s.ground_truth))
        return relabeled

    @staticmethod
    def injected(before: Sequence[LabeledPreference], after: Sequence[LabeledPreference]) -> np.ndarray:
        """Indices whose observed label changed during injection."""
        return np.array([i for i, (a, b) in enumerate(zip(before, after)) if a.observed is not b.observed],
                        dtype=int)


class ThresholdNoise(BaseNoise):
    """
    Deterministic top-epsilon selection on ``priority_scores``. With
    ``fixed_threshold`` set, the stored threshold is reused instead of
    re-calibrating on each batch.
    """

    def __init__(self, spec: NoiseModelSpec, ensemble=None, encoder=None, **kwargs):
        super().__init__(spec, ensemble, encoder, **kwargs)
        self.fixed_threshold: Optional[float] = None
        self.last_threshold: Optional[float] = None

    def select(self, batch: Sequence[LabeledPreference]) -> np.ndarray:
        scores = self.priority_scores(batch)
        if self.fixed_threshold is not None:
            return apply_threshold(scores, self.fixed_threshold)
        self.last_threshold = calibrate_threshold(scores, self.spec.target_rate)
        return select_flips(scores, self.spec.target_rate)

    def apply(self, batch: Sequence[LabeledPreference], rng: np.random.Generator) -> List[LabeledPreference]:
        flips = self.select(batch)
        probs = np.zeros(len(batch))
        probs[flips] = 1.0
        logger.debug(f'{self.spec.label}: flipping {len(flips)}/{len(batch)} pairs')
        return self._relabel(batch, probs, rng)


class ProbabilisticNoise(BaseNoise):
    """
    Bernoulli(N) per pair. In calibrated mode N is rescaled so its batch mean
    is the target rate; flips beyond the per-batch cap are reverted, lowest N first.
    """

    default_cap_from_rate = False

    @abc.abstractmethod
    def flip_probs(self, batch: Sequence[LabeledPreference]) -> np.ndarray:
        pass

    def cap(self, n: int) -> Optional[int]:
        if self.spec.max_flips_per_batch is not None:
            return self.spec.max_flips_per_batch
        if self.default_cap_from_rate:
            return int(np.ceil(self.spec.target_rate * n - 1e-9))
        return None

    def effective_probs(self, batch: Sequence[LabeledPreference]) -> np.ndarray:
        raw = self.flip_probs(batch)
        return rescale_to_rate(raw, self.spec.target_rate) if self.spec.calibrate else raw

    def apply(self, batch: Sequence[LabeledPreference], rng: np.random.Generator) -> List[LabeledPreference]:
        probs = self.effective_probs(batch)
        noisy = self._relabel(batch, probs, rng)
        flipped = self.injected(batch, noisy)
        kept = cap_flips(flipped, probs, self.cap(len(batch)))
        if len(kept) < len(flipped):
            reverted = set(flipped.tolist()) - set(kept.tolist())
            noisy = [s.flip() if i in reverted else s for i, s in enumerate(noisy)]
            logger.debug(f'{self.spec.label}: cap reverted {len(reverted)} flips')
        return noisy
