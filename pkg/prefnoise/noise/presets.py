"""
Named noise configurations for the standard comparison grid.

Each preset expands to a ``NoiseModelSpec`` for one target rate. The
magnitude variants read the position part of the observation, which depends
on the environment, so presets take the ``EnvSpec`` as well.
"""
from typing import Dict, List

from prefnoise.exceptions import ConfigurationError
from prefnoise.model import EnvSpec, NoiseKind, NoiseModelSpec

DEFAULT_BETA = 5.0
SIMILARITY_HYBRID_ALPHA = 0.5
# best-performing alpha per noise rate for the magnitude hybrid
MAGNITUDE_HYBRID_ALPHA: Dict[float, float] = {0.1: 0.9, 0.2: 0.5, 0.3: 0.5, 0.4: 0.3}

PRESETS: List[str] = ['uniform', 'distance', 'vae', 'magnitude', 'uncertainty', 'adversarial',
                      'distance_hybrid', 'vae_hybrid', 'magnitude_hybrid']


def position_subset(env: EnvSpec) -> List[int]:
    """Step-feature columns holding the agent's position."""
    if env.kind == 'gridworld':
        cells = env.size * env.size
        return [cells, cells + 1]
    return [0, 1]


def magnitude_alpha(rate: float) -> float:
    for known, alpha in MAGNITUDE_HYBRID_ALPHA.items():
        if abs(known - rate) < 1e-9:
            return alpha
    # rates outside the table take the nearest tabulated value
    nearest = min(MAGNITUDE_HYBRID_ALPHA, key=lambda known: abs(known - rate))
    return MAGNITUDE_HYBRID_ALPHA[nearest]


def preset(name: str, rate: float, env: EnvSpec) -> NoiseModelSpec:
    magnitude = dict(kind=NoiseKind.MAGNITUDE, target_rate=rate, beta=DEFAULT_BETA,
                     feature_subset=position_subset(env))
    if name == 'uniform':
        spec = dict(kind=NoiseKind.UNIFORM, target_rate=rate)
    elif name == 'distance':
        spec = dict(kind=NoiseKind.SIMILARITY_L2, target_rate=rate)
    elif name == 'vae':
        spec = dict(kind=NoiseKind.SIMILARITY_LATENT, target_rate=rate)
    elif name == 'magnitude':
        spec = magnitude
    elif name == 'uncertainty':
        spec = dict(kind=NoiseKind.UNCERTAINTY, target_rate=rate)
    elif name == 'adversarial':
        spec = dict(kind=NoiseKind.ADVERSARIAL, target_rate=rate)
    elif name == 'distance_hybrid':
        spec = dict(kind=NoiseKind.HYBRID, target_rate=rate, alpha=SIMILARITY_HYBRID_ALPHA,
                    component_f=NoiseModelSpec(kind=NoiseKind.SIMILARITY_L2, target_rate=rate))
    elif name == 'vae_hybrid':
        spec = dict(kind=NoiseKind.HYBRID, target_rate=rate, alpha=SIMILARITY_HYBRID_ALPHA,
                    component_f=NoiseModelSpec(kind=NoiseKind.SIMILARITY_LATENT, target_rate=rate))
    elif name == 'magnitude_hybrid':
        spec = dict(kind=NoiseKind.HYBRID, target_rate=rate, alpha=magnitude_alpha(rate),
                    component_f=NoiseModelSpec(**magnitude))
    else:
        raise ConfigurationError(f'unknown noise preset {name!r}, expected one of {PRESETS}')
    return NoiseModelSpec(name=name, **spec)
