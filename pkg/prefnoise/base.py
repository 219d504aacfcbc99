import logging
from typing import List, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from prefnoise.exceptions import ConfigurationError, NoiseDependencyError
from prefnoise.model import LabeledPreference, NoiseKind, NoiseModelSpec
from prefnoise.noise import (NoiseAdversarial,
                             NoiseHybrid,
                             NoiseMagnitude,
                             NoiseSimilarity,
                             NoiseUncertainty,
                             NoiseUniform)
from prefnoise.noise.base_noise import BaseNoise, ThresholdNoise

logger = logging.getLogger(__name__)


def _build_noise(spec: NoiseModelSpec, ensemble, encoder, **kwargs) -> BaseNoise:
    if spec.kind is NoiseKind.UNIFORM:
        return NoiseUniform(spec, ensemble, encoder, **kwargs)
    elif spec.kind in (NoiseKind.SIMILARITY_L2, NoiseKind.SIMILARITY_LATENT):
        return NoiseSimilarity(spec, ensemble, encoder, **kwargs)
    elif spec.kind is NoiseKind.MAGNITUDE:
        return NoiseMagnitude(spec, ensemble, encoder, **kwargs)
    elif spec.kind is NoiseKind.UNCERTAINTY:
        return NoiseUncertainty(spec, ensemble, encoder, **kwargs)
    elif spec.kind is NoiseKind.ADVERSARIAL:
        return NoiseAdversarial(spec, ensemble, encoder, **kwargs)
    elif spec.kind is NoiseKind.HYBRID:
        component = _build_noise(spec.component_f, ensemble, encoder, **kwargs)
        return NoiseHybrid(spec, ensemble, encoder, component=component, **kwargs)
    raise ConfigurationError(f'unknown noise kind {spec.kind!r}')


class NoiseInjectorBase:
    """
    Holds one noise engine for a ``NoiseModelSpec`` and the models it reads.

    ``recompute_threshold='global'`` fixes the top-epsilon threshold found on
    the first batch and reuses it for every later batch; ``per_batch``
    re-calibrates each time.
    """

    def __init__(self,
                 spec: NoiseModelSpec | dict,
                 ensemble=None,
                 encoder=None,
                 recompute_threshold: str = 'per_batch',
                 **kwargs):
        try:
            self.spec = NoiseModelSpec.model_validate(spec) if isinstance(spec, dict) else spec
        except ValidationError as e:
            raise ConfigurationError(f'invalid noise spec: {e}') from None
        if recompute_threshold not in ('per_batch', 'global'):
            raise ConfigurationError(f'recompute_threshold must be per_batch or global, got {recompute_threshold!r}')
        self.recompute_threshold = recompute_threshold
        self.noise = _build_noise(self.spec, ensemble, encoder, **kwargs)
        self.update_models(ensemble, encoder)

    def update_models(self, ensemble=None, encoder=None):
        """Point the engine (and a hybrid's component) at fresh reward/encoder snapshots."""
        if ensemble is not None or encoder is not None:
            engines = [self.noise] + ([self.noise.component] if isinstance(self.noise, NoiseHybrid) else [])
            for engine in engines:
                engine.ensemble = ensemble if ensemble is not None else engine.ensemble
                engine.encoder = encoder if encoder is not None else engine.encoder
        self._check_dependencies()

    def _check_dependencies(self):
        if self.spec.needs_ensemble and self.noise.ensemble is None:
            raise NoiseDependencyError(f'{self.spec.label} noise needs a reward ensemble')
        if self.spec.needs_encoder and self.noise.encoder is None:
            raise NoiseDependencyError(f'{self.spec.label} noise needs a trained encoder')

    @property
    def threshold(self) -> Optional[float]:
        return self.noise.last_threshold if isinstance(self.noise, ThresholdNoise) else None

    def apply(self, batch: Sequence[LabeledPreference], rng: np.random.Generator) -> List[LabeledPreference]:
        if not batch or self.spec.target_rate == 0.0:
            return list(batch)
        noisy = self.noise.apply(batch, rng)
        if (self.recompute_threshold == 'global' and isinstance(self.noise, ThresholdNoise)
                and self.noise.fixed_threshold is None):
            self.noise.fixed_threshold = self.noise.last_threshold
            logger.info(f'{self.spec.label}: fixing global threshold at {self.noise.fixed_threshold}')
        realized = sum(s.flipped for s in noisy) / len(noisy)
        logger.debug(f'{self.spec.label} eps={self.spec.target_rate}: realized rate {realized:.4f} on {len(noisy)} pairs')
        return noisy


def apply_noise(batch: Sequence[LabeledPreference],
                spec: NoiseModelSpec | dict,
                ensemble=None,
                encoder=None,
                rng: Optional[np.random.Generator] = None) -> List[LabeledPreference]:
    """One-shot corruption of ``batch`` with per-batch calibration."""
    rng = rng if rng is not None else np.random.default_rng()
    return NoiseInjectorBase(spec, ensemble=ensemble, encoder=encoder).apply(batch, rng)
