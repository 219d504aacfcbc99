import pytest
from pydantic import ValidationError

from prefnoise.model import (DenoiseReport, ExperimentConfig, ExperimentRecord, LabeledPreference, NoiseKind,
                             NoiseModelSpec, NoiseScore, PreferenceLabel, TrajectoryPair)

from conftest import make_pair, make_traj


class TestNoiseModelSpec:
    def test_magnitude_requires_beta_and_subset(self):
        with pytest.raises(ValidationError):
            NoiseModelSpec(kind='magnitude', target_rate=0.1)
        spec = NoiseModelSpec(kind='magnitude', target_rate=0.1, beta=1.0, feature_subset=[0])
        assert spec.kind is NoiseKind.MAGNITUDE

    def test_irrelevant_fields_rejected(self):
        with pytest.raises(ValidationError):
            NoiseModelSpec(kind='uniform', target_rate=0.1, beta=1.0)
        with pytest.raises(ValidationError):
            NoiseModelSpec(kind='uncertainty', target_rate=0.1, alpha=0.5)

    def test_hybrid_component_must_be_feature_based(self):
        with pytest.raises(ValidationError):
            NoiseModelSpec(kind='hybrid', target_rate=0.1, alpha=0.5,
                           component_f=NoiseModelSpec(kind='uncertainty'))
        spec = NoiseModelSpec(kind='hybrid', target_rate=0.1, alpha=0.5,
                              component_f=NoiseModelSpec(kind='similarity_latent'))
        assert spec.needs_ensemble and spec.needs_encoder

    @pytest.mark.parametrize('field, value', [('target_rate', 1.5), ('target_rate', -0.1)])
    def test_ranges(self, field, value):
        with pytest.raises(ValidationError):
            NoiseModelSpec(kind='uniform', **{field: value})

    def test_label_defaults_to_kind(self):
        assert NoiseModelSpec(kind='uniform').label == 'uniform'
        assert NoiseModelSpec(kind='uniform', name='baseline').label == 'baseline'

    def test_noise_score_prob_range(self):
        with pytest.raises(ValueError):
            NoiseScore(pair_index=0, score=0.0, flip_prob=1.2)


class TestPreferences:
    def test_pair_needs_distinct_ids(self):
        with pytest.raises(ValueError):
            TrajectoryPair(first=make_traj(1), second=make_traj(1))

    def test_flip_is_involution(self):
        sample = LabeledPreference.clean(make_pair(1.0, 0.0), PreferenceLabel.FIRST)
        once = sample.flip()
        assert once.flipped and once.observed is PreferenceLabel.SECOND
        twice = once.flip()
        assert not twice.flipped and twice.observed is PreferenceLabel.FIRST

    def test_provenance_must_match_labels(self):
        with pytest.raises(ValueError):
            LabeledPreference(pair=make_pair(1.0, 0.0), observed=PreferenceLabel.FIRST,
                              ground_truth=PreferenceLabel.FIRST, flipped=True)


class TestDenoiseReport:
    def test_overlap_rejected(self):
        with pytest.raises(ValueError):
            DenoiseReport(trusted=(0, 1), suspect=(1,), flipped=(), precision=1.0, recall=1.0)

    def test_flipped_must_be_suspect(self):
        with pytest.raises(ValueError):
            DenoiseReport(trusted=(0,), suspect=(1,), flipped=(0,), precision=1.0, recall=1.0)


class TestExperimentModels:
    def test_defaults(self):
        cfg = ExperimentConfig()
        assert cfg.queries_per_round == 50
        assert cfg.rounds == 20
        assert cfg.seeds == [0, 1, 2, 3, 4]

    def test_schema_version_checked(self):
        with pytest.raises(ValidationError):
            ExperimentConfig(schema_version=2)

    def test_record_row_formatting(self):
        record = ExperimentRecord(seed=1, round=2, noise_kind='uniform', target_rate=0.1, realized_rate=0.12,
                                  denoiser_precision=1.0, denoiser_recall=0.5, reward_label_accuracy=0.9,
                                  mean_return=3.25, std_return=0.5)
        assert record.to_row() == ['1', '2', 'uniform', '0.100000', '0.120000', '1.000000', '0.500000',
                                   '0.900000', '3.250000', '0.500000']

    def test_record_rate_bounds(self):
        with pytest.raises(ValidationError):
            ExperimentRecord(seed=0, round=0, noise_kind='uniform', target_rate=0.1, realized_rate=1.2,
                             denoiser_precision=1.0, denoiser_recall=1.0, reward_label_accuracy=1.0,
                             mean_return=0.0, std_return=0.0)
