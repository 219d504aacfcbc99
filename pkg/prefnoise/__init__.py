from prefnoise.base import NoiseInjectorBase, apply_noise
from prefnoise.model import NoiseModelSpec

__version__ = '0.1.0'


class NoiseInjector(NoiseInjectorBase):

    def __init__(self,
                 spec: NoiseModelSpec | dict,
                 ensemble=None,
                 encoder=None,
                 recompute_threshold: str = 'per_batch',
                 **kwargs):
        super().__init__(spec=spec,
                         ensemble=ensemble,
                         encoder=encoder,
                         recompute_threshold=recompute_threshold,
                         **kwargs)
