from prefnoise.noise.calibration import (calibrate_threshold, select_flips, flip_count, apply_threshold,
                                         rescale_to_rate)
from prefnoise.noise.base_noise import BaseNoise, ThresholdNoise, ProbabilisticNoise
from prefnoise.noise.noise_uniform import NoiseUniform
from prefnoise.noise.noise_similarity import NoiseSimilarity, similarity_flip_prob, trajectory_distance
from prefnoise.noise.noise_magnitude import NoiseMagnitude, magnitude_flip_prob, feature_magnitude
from prefnoise.noise.noise_uncertainty import NoiseUncertainty, uncertainty_scores
from prefnoise.noise.noise_adversarial import NoiseAdversarial, adversarial_scores
from prefnoise.noise.noise_hybrid import NoiseHybrid, hybrid_scores
from prefnoise.noise.presets import preset, PRESETS
