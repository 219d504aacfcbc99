import logging
from typing import List, Sequence

import numpy as np

from prefnoise.exceptions import ConfigurationError, TrainingDivergedError
from prefnoise.model import EncoderConfig, Trajectory
from prefnoise.nn import DenseNetwork, SGD

logger = logging.getLogger(__name__)

LOGVAR_RANGE = (-10.0, 10.0)


class Encoder:
    """
    Dense variational autoencoder over flattened trajectories.

    ``encode`` returns the posterior mean, so embeddings are deterministic.
    """

    def __init__(self, cfg: EncoderConfig, input_dim: int):
        if cfg.embedding_dim >= input_dim:
            raise ConfigurationError(f'embedding_dim ({cfg.embedding_dim}) must be smaller than input_dim ({input_dim})')
        self.cfg = cfg
        self.input_dim = input_dim
        self.embedding_dim = cfg.embedding_dim
        rng = np.random.default_rng(cfg.seed)
        hidden = list(cfg.hidden_dims)
        self.encoder = DenseNetwork([input_dim, *hidden, 2 * cfg.embedding_dim],
                                    ['tanh'] * len(hidden) + ['linear'], rng=rng)
        self.decoder = DenseNetwork([cfg.embedding_dim, *reversed(hidden), input_dim],
                                    ['tanh'] * len(hidden) + ['linear'], rng=rng)
        self.trained = False
        self.loss_history: List[float] = []
        self.initial_reconstruction = float('nan')
        self.final_reconstruction = float('nan')

    def _posterior(self, x: np.ndarray):
        out, memory = self.encoder.forward(x)
        mu = out[:, :self.embedding_dim]
        logvar = np.clip(out[:, self.embedding_dim:], *LOGVAR_RANGE)
        return mu, logvar, memory

    def embed(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(x)
        if x.shape[1] != self.input_dim:
            raise ConfigurationError(f'encoder expects {self.input_dim} features, got {x.shape[1]}')
        return self._posterior(x)[0]

    def reconstruction_loss(self, x: np.ndarray) -> float:
        """Mean per-sample squared reconstruction error through the posterior mean."""
        x_hat = self.decoder.predict(self.embed(x))
        return float(np.mean(np.sum((x_hat - x) ** 2, axis=1)))

    def train_step(self, x: np.ndarray, rng: np.random.Generator, optimizer_e: SGD, optimizer_d: SGD) -> float:
        cfg = self.cfg
        n = len(x)
        mu, logvar, memory_e = self._posterior(x)
        std = np.exp(0.5 * logvar)
        eps = rng.standard_normal(mu.shape)
        z = mu + std * eps
        x_hat, memory_d = self.decoder.forward(z)

        rec = np.mean(np.sum((x_hat - x) ** 2, axis=1))
        kl = np.mean(-0.5 * np.sum(1.0 + logvar - mu ** 2 - np.exp(logvar), axis=1))
        loss = cfg.reconstruction_weight * rec + cfg.kl_weight * kl

        d_x_hat = cfg.reconstruction_weight * 2.0 * (x_hat - x) / n
        grads_d, d_z = self.decoder.backward(d_x_hat, memory_d)
        d_mu = d_z + cfg.kl_weight * mu / n
        d_logvar = d_z * eps * 0.5 * std + cfg.kl_weight * 0.5 * (np.exp(logvar) - 1.0) / n
        grads_e, _ = self.encoder.backward(np.concatenate([d_mu, d_logvar], axis=1), memory_e)

        optimizer_d.step(self.decoder.params, grads_d)
        optimizer_e.step(self.encoder.params, grads_e)
        return float(loss)

    def save(self, path: str):
        np.savez(path,
                 embedding_dim=np.asarray(self.embedding_dim),
                 input_dim=np.asarray(self.input_dim),
                 **self.encoder.state(prefix='enc_'),
                 **self.decoder.state(prefix='dec_'))

    @classmethod
    def load(cls, path: str) -> 'Encoder':
        with np.load(path, allow_pickle=False) as state:
            enc = cls.__new__(cls)
            enc.input_dim = int(state['input_dim'])
            enc.embedding_dim = int(state['embedding_dim'])
            enc.cfg = EncoderConfig(input_dim=enc.input_dim, embedding_dim=enc.embedding_dim)
            enc.encoder = DenseNetwork.from_state(state, prefix='enc_')
            enc.decoder = DenseNetwork.from_state(state, prefix='dec_')
        enc.trained = True
        enc.loss_history = []
        enc.initial_reconstruction = enc.final_reconstruction = float('nan')
        return enc


def trajectory_matrix(trajs: Sequence[Trajectory]) -> np.ndarray:
    return np.stack([t.flat_features() for t in trajs])


def train_encoder(trajs: Sequence[Trajectory], cfg: EncoderConfig) -> Encoder:
    if len(trajs) < cfg.batch_size:
        raise ConfigurationError(f'need at least batch_size={cfg.batch_size} trajectories, got {len(trajs)}')
    x = trajectory_matrix(trajs)
    if cfg.input_dim and cfg.input_dim != x.shape[1]:
        raise ConfigurationError(f'config input_dim {cfg.input_dim} does not match trajectory width {x.shape[1]}')
    enc = Encoder(cfg, x.shape[1])
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed).spawn(1)[0])
    optimizer_e = SGD(enc.encoder.params, cfg.learning_rate, momentum=0.0)
    optimizer_d = SGD(enc.decoder.params, cfg.learning_rate, momentum=0.0)

    enc.initial_reconstruction = enc.reconstruction_loss(x)
    for epoch in range(cfg.epochs):
        order = rng.permutation(len(x))
        total = 0.0
        for start in range(0, len(x), cfg.batch_size):
            rows = x[order[start:start + cfg.batch_size]]
            loss = enc.train_step(rows, rng, optimizer_e, optimizer_d)
            if not np.isfinite(loss):
                raise TrainingDivergedError('non-finite encoder loss', {'epoch': epoch, 'loss': loss})
            total += loss * len(rows)
        enc.loss_history.append(total / len(x))
    enc.final_reconstruction = enc.reconstruction_loss(x)
    enc.trained = True
    logger.info(f'encoder trained: {x.shape[1]}->{cfg.embedding_dim}, reconstruction '
                f'{enc.initial_reconstruction:.4f} -> {enc.final_reconstruction:.4f}')
    return enc


def encode(enc: Encoder, traj: Trajectory) -> np.ndarray:
    return enc.embed(traj.flat_features())[0]


def embedding_distance(enc: Encoder, first: Trajectory, second: Trajectory) -> float:
    return float(np.linalg.norm(encode(enc, first) - encode(enc, second)))
