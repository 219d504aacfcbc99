"""
Turning noise scores into an exact number of flips.

``flip_below`` flips the lowest scores first (uncertainty, adversarial,
hybrid priorities); ``flip_above`` flips the highest first. Equal scores are
taken in ascending pair-index order.
"""
import math
from typing import Literal, Optional, Sequence

import numpy as np

Direction = Literal['flip_below', 'flip_above']

_FLOOR_SLACK = 1e-9


def flip_count(epsilon: float, n: int) -> int:
    """floor(epsilon * n), robust to 0.3 * 100 == 30.000000000000004 style rounding."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f'epsilon must lie in [0, 1], got {epsilon}')
    return min(n, int(math.floor(epsilon * n + _FLOOR_SLACK)))


def _check(scores: Sequence[float], direction: str) -> np.ndarray:
    scores = np.asarray(scores, dtype=np.float64)
    if scores.size == 0:
        raise ValueError('scores must not be empty')
    if direction not in ('flip_below', 'flip_above'):
        raise ValueError(f'unknown direction {direction!r}')
    return scores


def flip_order(scores: Sequence[float], direction: Direction = 'flip_below') -> np.ndarray:
    scores = _check(scores, direction)
    keyed = scores if direction == 'flip_below' else -scores
    return np.argsort(keyed, kind='stable')


def select_flips(scores: Sequence[float], epsilon: float, direction: Direction = 'flip_below') -> np.ndarray:
    """Sorted indices of exactly floor(epsilon * n) pairs to flip."""
    order = flip_order(scores, direction)
    k = flip_count(epsilon, len(order))
    return np.sort(order[:k])


def calibrate_threshold(scores: Sequence[float], epsilon: float, direction: Direction = 'flip_below') -> float:
    """
    Threshold separating the floor(epsilon * n) flipped scores from the rest:
    flip iff score < threshold (``flip_below``) or score > threshold
    (``flip_above``). It sits midway between the last flipped and first kept
    score; ties straddling it are resolved by ``select_flips``.
    """
    scores = _check(scores, direction)
    n = len(scores)
    k = flip_count(epsilon, n)
    ordered = np.sort(scores) if direction == 'flip_below' else -np.sort(-scores)
    if k == 0:
        return -math.inf if direction == 'flip_below' else math.inf
    if k == n:
        return math.inf if direction == 'flip_below' else -math.inf
    return float((ordered[k - 1] + ordered[k]) / 2.0)


def apply_threshold(scores: Sequence[float], threshold: float, direction: Direction = 'flip_below') -> np.ndarray:
    scores = _check(scores, direction)
    mask = scores < threshold if direction == 'flip_below' else scores > threshold
    return np.flatnonzero(mask)


def rescale_to_rate(probs: Sequence[float], epsilon: float) -> np.ndarray:
    """
    Scale probabilities so their mean is ``epsilon``, clipping at 1 and
    redistributing the clipped mass over the remaining pairs.
    """
    probs = np.asarray(probs, dtype=np.float64)
    n = len(probs)
    if n == 0:
        return probs
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f'epsilon must lie in [0, 1], got {epsilon}')
    target = epsilon * n
    out = np.zeros(n)
    free = np.ones(n, dtype=bool)
    for _ in range(n + 1):
        remaining = target - (n - free.sum())
        if remaining <= 0 or not free.any():
            break
        mass = probs[free].sum()
        if mass <= 0:
            out[free] = remaining / free.sum()
            break
        out[free] = probs[free] * (remaining / mass)
        over = free & (out >= 1.0)
        if not over.any():
            break
        out[over] = 1.0
        free &= ~over
    return np.clip(out, 0.0, 1.0)


def cap_flips(flipped: np.ndarray, probs: np.ndarray, cap: Optional[int]) -> np.ndarray:
    """Keep at most ``cap`` of the flipped indices, highest flip probability first."""
    flipped = np.asarray(flipped, dtype=int)
    if cap is None or len(flipped) <= cap:
        return flipped
    order = np.argsort(-probs[flipped], kind='stable')
    return np.sort(flipped[order[:cap]])
