"""
KL-based filtering of incoming preferences against the current reward model.

A sample whose observed label the model finds plausible (low KL) is trusted.
The rest are suspects; with flip correction on, suspects the model
contradicts strongly enough are relabelled instead of dropped.
"""
import logging
import math
from typing import List, Sequence

import numpy as np

from prefnoise.model import DenoiserConfig, DenoiseReport, LabeledPreference, PreferenceLabel
from prefnoise.util.numeric import ONE_HOT_SMOOTHING, kl_divergence, smoothed_one_hot

logger = logging.getLogger(__name__)


def label_kl(net, sample: LabeledPreference, delta: float = ONE_HOT_SMOOTHING) -> float:
    """KL(smoothed one-hot of the observed label || Bradley-Terry distribution of ``net``)."""
    p_first = net.bt_prob(sample.pair)
    observed = smoothed_one_hot(sample.observed is PreferenceLabel.FIRST, delta)
    return kl_divergence(observed, np.array([p_first, 1.0 - p_first]))


def scheduled_threshold(cfg: DenoiserConfig, step: int) -> float:
    if cfg.threshold_schedule == 'decaying':
        return cfg.base_threshold / (1.0 + cfg.decay * step)
    return cfg.base_threshold


def _ratio(num: int, den: int) -> float:
    return num / den if den else 1.0


def partition(batch: Sequence[LabeledPreference], net, cfg: DenoiserConfig = DenoiserConfig(), step: int = 0) -> DenoiseReport:
    if not batch:
        raise ValueError('batch must not be empty')
    threshold = scheduled_threshold(cfg, step)
    flip_bound = math.log(1.0 / cfg.flip_delta)
    kls = np.array([label_kl(net, s) for s in batch])
    trusted = tuple(int(i) for i in np.flatnonzero(kls < threshold))
    suspect = tuple(int(i) for i in np.flatnonzero(kls >= threshold))
    flipped = tuple(i for i in suspect if kls[i] > flip_bound) if cfg.flip_correction else ()

    noisy = {i for i, s in enumerate(batch) if s.flipped}
    caught = len(noisy.intersection(suspect))
    report = DenoiseReport(trusted=trusted,
                           suspect=suspect,
                           flipped=flipped,
                           precision=_ratio(caught, len(suspect)),
                           recall=_ratio(caught, len(noisy)),
                           threshold=threshold)
    logger.debug(f'denoise step {step}: tau={threshold:.4f} trusted={len(trusted)} suspect={len(suspect)} '
                 f'flipped={len(flipped)} precision={report.precision:.3f} recall={report.recall:.3f}')
    return report


def denoised_batch(batch: Sequence[LabeledPreference], report: DenoiseReport) -> List[LabeledPreference]:
    """Trusted samples plus the flip-corrected suspects, in batch order."""
    flipped = set(report.flipped)
    keep = sorted(set(report.trusted) | flipped)
    return [batch[i].flip() if i in flipped else batch[i] for i in keep]
