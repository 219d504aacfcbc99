import json
import logging
from typing import Optional

from pydantic import ValidationError

from prefnoise.exceptions import ConfigurationError
from prefnoise.model import ExperimentConfig

logger = logging.getLogger(__name__)


def parse_config(data: dict) -> ExperimentConfig:
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        fields = ', '.join('.'.join(str(p) for p in err['loc']) or '<root>' for err in e.errors())
        raise ConfigurationError(f'invalid experiment config ({fields}): {e}') from None


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except OSError as e:
        raise ConfigurationError(f'cannot read config {path}: {e}') from e
    except json.JSONDecodeError as e:
        raise ConfigurationError(f'config {path} is not valid JSON: {e}') from None
    if not isinstance(data, dict):
        raise ConfigurationError(f'config {path} must hold a JSON object')
    cfg = parse_config(data)
    logger.debug(f'loaded config {path}: env={cfg.env.kind} noise={cfg.noise.label} seeds={cfg.seeds}')
    return cfg


def with_overrides(cfg: ExperimentConfig,
                   seed: Optional[int] = None,
                   out: Optional[str] = None) -> ExperimentConfig:
    """Command-line overrides: ``seed`` replaces the seed list, ``out`` the output path."""
    protocol = {}
    if seed is not None:
        if seed < 0:
            raise ConfigurationError(f'seed must be non-negative, got {seed}')
        protocol['seeds'] = [seed]
    if out is not None:
        protocol['output_path'] = out
    if not protocol:
        return cfg
    return cfg.model_copy(update={'protocol': cfg.protocol.model_copy(update=protocol)})
