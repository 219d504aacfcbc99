import numpy as np
import pytest

from prefnoise.agent import RandomPolicy
from prefnoise.envs import collect, make_env
from prefnoise.exceptions import ConfigurationError
from prefnoise.latent import Encoder, embedding_distance, encode, train_encoder
from prefnoise.model import EncoderConfig, EnvSpec


@pytest.fixture
def small_trajs():
    env = make_env(EnvSpec(kind='gridworld', size=4, horizon=5))
    return collect(env, RandomPolicy(env), 64, np.random.default_rng(3))


def config(**kwargs):
    defaults = dict(embedding_dim=4, hidden_dims=(16,), learning_rate=1e-3, epochs=30, batch_size=16, seed=5)
    defaults.update(kwargs)
    return EncoderConfig(**defaults)


class TestTrainEncoder:
    def test_reconstruction_improves(self, small_trajs):
        enc = train_encoder(small_trajs, config())
        assert enc.trained
        assert enc.final_reconstruction < enc.initial_reconstruction

    def test_embedding_shape(self, small_trajs):
        enc = train_encoder(small_trajs, config(epochs=1))
        assert encode(enc, small_trajs[0]).shape == (4,)

    def test_deterministic_under_seed(self, small_trajs):
        a = train_encoder(small_trajs, config(epochs=3))
        b = train_encoder(small_trajs, config(epochs=3))
        np.testing.assert_array_equal(encode(a, small_trajs[1]), encode(b, small_trajs[1]))

    def test_too_few_trajectories(self, small_trajs):
        with pytest.raises(ConfigurationError):
            train_encoder(small_trajs[:8], config(batch_size=16))

    def test_input_dim_mismatch(self, small_trajs):
        with pytest.raises(ConfigurationError):
            train_encoder(small_trajs, config(input_dim=10))

    def test_embedding_must_compress(self):
        with pytest.raises(ValueError):
            EncoderConfig(input_dim=8, embedding_dim=8)


class TestEmbeddings:
    def test_distance_symmetric_and_zero_on_self(self, small_trajs):
        enc = train_encoder(small_trajs, config(epochs=2))
        a, b = small_trajs[0], small_trajs[1]
        assert embedding_distance(enc, a, a) == pytest.approx(0.0)
        assert embedding_distance(enc, a, b) == pytest.approx(embedding_distance(enc, b, a))

    def test_save_load(self, small_trajs, tmp_path):
        enc = train_encoder(small_trajs, config(epochs=2))
        path = str(tmp_path / 'encoder.npz')
        enc.save(path)
        restored = Encoder.load(path)
        np.testing.assert_allclose(encode(restored, small_trajs[2]), encode(enc, small_trajs[2]))

    def test_wrong_width_rejected(self, small_trajs):
        enc = train_encoder(small_trajs, config(epochs=1))
        with pytest.raises(ConfigurationError):
            enc.embed(np.zeros(3))


@pytest.mark.slow
def test_gridworld_encoder_500_trajectories():
    env = make_env(EnvSpec(kind='gridworld', size=8, horizon=20))
    trajs = collect(env, RandomPolicy(env), 500, np.random.default_rng(0))
    enc = train_encoder(trajs, EncoderConfig(embedding_dim=8, epochs=50, learning_rate=1e-4))
    assert enc.final_reconstruction < enc.initial_reconstruction
