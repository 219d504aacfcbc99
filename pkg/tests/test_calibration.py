import numpy as np
import pytest

from prefnoise.noise.calibration import (apply_threshold, calibrate_threshold, cap_flips, flip_count,
                                         rescale_to_rate, select_flips)


class TestFlipCount:
    def test_floor(self):
        assert flip_count(0.3, 100) == 30
        assert flip_count(0.25, 10) == 2
        assert flip_count(1.0, 7) == 7

    def test_range(self):
        with pytest.raises(ValueError):
            flip_count(1.1, 10)


class TestCalibrateThreshold:
    def test_half_of_four(self):
        scores = [1.0, 2.0, 3.0, 4.0]
        threshold = calibrate_threshold(scores, 0.5)
        assert threshold == pytest.approx(2.5)
        assert list(apply_threshold(scores, threshold)) == [0, 1]
        assert list(select_flips(scores, 0.5)) == [0, 1]

    def test_endpoints(self):
        scores = [3.0, 1.0, 2.0]
        assert len(select_flips(scores, 0.0)) == 0
        assert len(apply_threshold(scores, calibrate_threshold(scores, 0.0))) == 0
        assert list(select_flips(scores, 1.0)) == [0, 1, 2]
        assert len(apply_threshold(scores, calibrate_threshold(scores, 1.0))) == 3

    def test_flip_above(self):
        scores = [1.0, 4.0, 2.0, 3.0]
        assert list(select_flips(scores, 0.5, 'flip_above')) == [1, 3]
        assert list(apply_threshold(scores, calibrate_threshold(scores, 0.5, 'flip_above'), 'flip_above')) == [1, 3]

    def test_ties_take_lowest_index(self):
        assert list(select_flips([1.0, 1.0, 1.0, 1.0], 0.5)) == [0, 1]

    def test_exact_count_matches_brute_force(self, rng):
        scores = rng.normal(size=100)
        flips = select_flips(scores, 0.3)
        assert len(flips) == 30
        assert set(flips) == set(np.argsort(scores)[:30])

    def test_idempotent(self, rng):
        scores = rng.integers(0, 5, size=40).astype(float)
        np.testing.assert_array_equal(select_flips(scores, 0.4), select_flips(scores, 0.4))
        assert calibrate_threshold(scores, 0.4) == calibrate_threshold(scores, 0.4)

    def test_empty_scores(self):
        with pytest.raises(ValueError):
            calibrate_threshold([], 0.5)


class TestRescale:
    def test_mean_hits_target(self, rng):
        probs = rng.uniform(0, 0.2, size=200)
        scaled = rescale_to_rate(probs, 0.1)
        assert scaled.mean() == pytest.approx(0.1)
        assert np.all((0 <= scaled) & (scaled <= 1))

    def test_clipping_redistributes(self):
        scaled = rescale_to_rate([1.0, 0.1, 0.1, 0.1], 0.5)
        assert scaled[0] == pytest.approx(1.0)
        assert scaled.mean() == pytest.approx(0.5)

    def test_all_zero_spreads_evenly(self):
        np.testing.assert_allclose(rescale_to_rate(np.zeros(4), 0.25), 0.25)


class TestCapFlips:
    def test_keeps_highest_probability(self):
        kept = cap_flips(np.array([0, 2, 3]), np.array([0.2, 0.0, 0.9, 0.5]), 2)
        assert list(kept) == [2, 3]

    def test_no_cap(self):
        assert list(cap_flips(np.array([1, 2]), np.ones(3), None)) == [1, 2]
