"""
Scripted teachers that judge a pair by its ground-truth segment returns.

``oracle_prob`` is the stochastic oracle, ``oracle_label`` the thresholded
one, and ``noisy_label`` mixes the oracle with its reversal under a
pair-level flip probability.
"""
import numpy as np

from prefnoise.envs.rollout import true_return
from prefnoise.model import LabeledPreference, PreferenceLabel, Tie, TIE, TrajectoryPair
from prefnoise.util.numeric import sigmoid


def return_gap(pair: TrajectoryPair, gamma: float = 1.0) -> float:
    return true_return(pair.first, gamma) - true_return(pair.second, gamma)


def oracle_prob(pair: TrajectoryPair, gamma: float = 1.0) -> float:
    """sigma(G(first) - G(second))."""
    return sigmoid(return_gap(pair, gamma))


def oracle_label(pair: TrajectoryPair, gamma: float = 1.0, tolerance: float = 0.0) -> PreferenceLabel | Tie:
    gap = return_gap(pair, gamma)
    if gap > tolerance:
        return PreferenceLabel.FIRST
    if gap < -tolerance:
        return PreferenceLabel.SECOND
    return TIE


def noisy_label(pair: TrajectoryPair,
                flip_prob: float,
                oracle: PreferenceLabel,
                rng: np.random.Generator) -> LabeledPreference:
    """One Bernoulli(flip_prob) draw decides whether the oracle label is reversed."""
    if not 0.0 <= flip_prob <= 1.0:
        raise ValueError(f'flip_prob must lie in [0, 1], got {flip_prob}')
    if not isinstance(oracle, PreferenceLabel):
        raise ValueError(f'ties must be filtered before labeling, got {oracle!r}')
    flipped = bool(rng.random() < flip_prob)
    observed = oracle.reversed() if flipped else oracle
    return LabeledPreference(pair=pair,
                             observed=observed,
                             ground_truth=oracle,
                             flipped=flipped,
                             flip_prob=float(flip_prob))


def label_pairs(pairs, gamma: float = 1.0, tolerance: float = 0.0):
    """Clean oracle labels for ``pairs``; tied pairs are dropped."""
    labeled = []
    for pair in pairs:
        label = oracle_label(pair, gamma, tolerance)
        if label is TIE:
            continue
        labeled.append(LabeledPreference.clean(pair, label))
    return labeled
