import csv
import logging
import os
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, List, Optional, Sequence

import numpy as np

from prefnoise import NoiseInjector
from prefnoise.agent import RandomPolicy, TabularPolicy, evaluate, train_policy
from prefnoise.denoise import denoised_batch, partition
from prefnoise.envs import Environment, collect, make_env, sample_pairs
from prefnoise.exceptions import ConfigurationError, ExperimentIOError, TrainingDivergedError
from prefnoise.latent import train_encoder
from prefnoise.model import (CSV_HEADER, DenoiseReport, ExperimentConfig, ExperimentRecord, LabeledPreference,
                             Trajectory)
from prefnoise.remote import RemoteTeacher
from prefnoise.reward import RewardEnsemble, label_accuracy, train_update
from prefnoise.teachers import label_pairs

logger = logging.getLogger(__name__)

# pair draws allowed per requested label before giving up on ties
MAX_DRAWS_PER_LABEL = 20


def labeled_pairs(buffer: Sequence[Trajectory], n: int, rng: np.random.Generator,
                  gamma: float, tolerance: float) -> List[LabeledPreference]:
    """``n`` clean oracle preferences from ``buffer``; tied pairs are redrawn."""
    labeled: List[LabeledPreference] = []
    draws = 0
    while len(labeled) < n and draws < MAX_DRAWS_PER_LABEL * n:
        batch = sample_pairs(buffer, n - len(labeled), rng)
        draws += len(batch)
        labeled.extend(label_pairs(batch, gamma, tolerance))
    if len(labeled) < n:
        logger.info(f'only {len(labeled)}/{n} untied pairs after {draws} draws')
    return labeled


def no_filter_report(batch: Sequence[LabeledPreference]) -> DenoiseReport:
    """Report for an unfiltered batch: everything trusted."""
    flipped = sum(s.flipped for s in batch)
    return DenoiseReport(trusted=tuple(range(len(batch))), suspect=(), flipped=(),
                         precision=1.0, recall=0.0 if flipped else 1.0)


class RecordWriter:
    """Appends CSV rows as they are produced, flushing after each one."""

    def __init__(self, path: Optional[str]):
        self.path = path
        self.written = 0
        self._file = None
        self._writer = None

    def __enter__(self):
        if self.path:
            try:
                os.makedirs(os.path.dirname(os.path.abspath(self.path)), exist_ok=True)
                self._file = open(self.path, 'w', newline='', encoding='utf-8')
                self._writer = csv.writer(self._file, lineterminator='\n')
                self._writer.writerow(CSV_HEADER)
            except OSError as e:
                raise ExperimentIOError(f'cannot open {self.path}: {e}', records_written=0) from e
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self._file:
            self._file.close()
            self._file = None

    def write(self, record: ExperimentRecord):
        if self._writer is not None:
            try:
                self._writer.writerow(record.to_row())
                self._file.flush()
            except OSError as e:
                raise ExperimentIOError(f'cannot write to {self.path}: {e}', records_written=self.written) from e
        self.written += 1


def _check_finite(record: ExperimentRecord):
    values = {k: v for k, v in record.model_dump().items() if isinstance(v, float)}
    bad = {k: v for k, v in values.items() if not np.isfinite(v)}
    if bad:
        raise TrainingDivergedError('non-finite metric', {'seed': record.seed, 'round': record.round, **bad})


def _behaviour_policy(env: Environment, policy, epsilon: float):
    if policy is None:
        return RandomPolicy(env)
    if isinstance(policy, TabularPolicy):
        return TabularPolicy(env, policy.q, epsilon=epsilon)
    return policy


def run_seed(cfg: ExperimentConfig,
             seed: int,
             transport=None,
             on_record: Optional[Callable[[ExperimentRecord], None]] = None) -> List[ExperimentRecord]:
    """All rounds for one seed; deterministic given (cfg, seed) and a deterministic teacher."""
    protocol = cfg.protocol
    streams = [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(6)]
    rollout_rng, pair_rng, noise_rng, policy_rng, eval_rng, heldout_rng = streams

    env = make_env(cfg.env.model_copy(update={'seed': seed}))
    train_cfg = cfg.train.model_copy(update={'seed': seed})
    ensemble = RewardEnsemble(env.step_dim, train_cfg)

    heldout_buffer = collect(env, RandomPolicy(env), protocol.rollouts_per_round, heldout_rng, first_id=10 ** 9)
    heldout = labeled_pairs(heldout_buffer, protocol.heldout_pairs, heldout_rng, env.gamma, protocol.tie_tolerance)

    encoder = None
    if cfg.noise.needs_encoder:
        enc_cfg = cfg.encoder.model_copy(update={'seed': seed})
        n = max(protocol.rollouts_per_round, enc_cfg.batch_size)
        encoder = train_encoder(collect(env, RandomPolicy(env), n, rollout_rng, first_id=2 * 10 ** 9), enc_cfg)

    injector = NoiseInjector(cfg.noise,
                             ensemble=ensemble.snapshot() if cfg.noise.needs_ensemble else None,
                             encoder=encoder,
                             recompute_threshold=protocol.recompute_threshold)
    remote = RemoteTeacher(cfg.teacher.remote, transport) if cfg.teacher.kind == 'remote' else None

    dataset: List[LabeledPreference] = []
    policy = None
    next_id = 0
    records = []
    for round_ in range(protocol.rounds):
        behaviour = _behaviour_policy(env, policy, cfg.agent.epsilon)
        n_policy = protocol.rollouts_per_round // 2 if policy is not None else 0
        buffer = (collect(env, behaviour, n_policy, rollout_rng, first_id=next_id)
                  + collect(env, RandomPolicy(env), protocol.rollouts_per_round - n_policy, rollout_rng,
                            first_id=next_id + n_policy))
        next_id += protocol.rollouts_per_round

        if remote is not None:
            batch, _ = remote.label(sample_pairs(buffer, protocol.queries_per_round, pair_rng),
                                    env.gamma, protocol.tie_tolerance)
        else:
            batch = labeled_pairs(buffer, protocol.queries_per_round, pair_rng, env.gamma, protocol.tie_tolerance)

        if cfg.noise.needs_ensemble:
            injector.update_models(ensemble=ensemble.snapshot())
        noisy = injector.apply(batch, noise_rng)
        realized = float(np.mean([s.flipped for s in noisy])) if noisy else 0.0

        # the first round has no trained model to judge labels with
        if cfg.denoiser is not None and round_ > 0 and noisy:
            report = partition(noisy, ensemble, cfg.denoiser, step=round_)
            dataset.extend(denoised_batch(noisy, report))
        else:
            report = no_filter_report(noisy)
            dataset.extend(noisy)

        if dataset:
            ensemble, _ = train_update(ensemble, dataset)
        accuracy = label_accuracy(ensemble, heldout)
        policy = train_policy(env, ensemble, protocol.policy_steps, policy_rng, cfg.agent)
        result = evaluate(policy, env, protocol.eval_episodes, eval_rng)

        record = ExperimentRecord(seed=seed,
                                  round=round_,
                                  noise_kind=cfg.noise.label,
                                  target_rate=float(cfg.noise.target_rate),
                                  realized_rate=realized,
                                  denoiser_precision=float(report.precision),
                                  denoiser_recall=float(report.recall),
                                  reward_label_accuracy=accuracy,
                                  mean_return=result.mean_return,
                                  std_return=result.std_return)
        _check_finite(record)
        logger.info(f'seed {seed} round {round_}: {cfg.noise.label}@{cfg.noise.target_rate} '
                    f'realized={realized:.3f} acc={accuracy:.3f} return={result.mean_return:.3f}')
        records.append(record)
        if on_record is not None:
            on_record(record)
    return records


def run_experiment(cfg: ExperimentConfig, transport=None, write: bool = True, jobs: int = 1) -> List[ExperimentRecord]:
    """
    One record per (seed, round), seeds in config order. Rows are written to
    ``cfg.output_path`` unless ``write`` is false: as they are produced with
    ``jobs=1``, otherwise once every seed has finished, in the same order.
    """
    if jobs < 1:
        raise ConfigurationError(f'jobs must be >= 1, got {jobs}')
    records: List[ExperimentRecord] = []
    with RecordWriter(cfg.output_path if write else None) as writer:
        if jobs == 1:
            for seed in cfg.seeds:
                records.extend(run_seed(cfg, seed, transport, on_record=writer.write))
            return records

        def __process__(index: int, seed: int):
            return index, run_seed(cfg, seed, transport)

        with ThreadPoolExecutor(max_workers=jobs) as executor:
            futures = [executor.submit(__process__, i, seed) for i, seed in enumerate(cfg.seeds)]
            results = [future.result() for future in as_completed(futures)]
        results.sort(key=lambda x: x[0])
        for _, seed_records in results:
            for record in seed_records:
                writer.write(record)
            records.extend(seed_records)
    return records
