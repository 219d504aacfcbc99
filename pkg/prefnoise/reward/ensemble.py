import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from prefnoise.exceptions import TrainingDivergedError
from prefnoise.model import LabeledPreference, TrainConfig, Trajectory, TrajectoryPair
from prefnoise.nn import DenseNetwork, make_optimizer
from prefnoise.reward.reward_net import RewardNet
from prefnoise.util.numeric import pairwise_softmax

logger = logging.getLogger(__name__)


@dataclass
class TrainReport:
    member_losses: List[float] = field(default_factory=list)
    history: List[List[float]] = field(default_factory=list)

    @property
    def mean_loss(self) -> float:
        return float(np.mean(self.member_losses)) if self.member_losses else float('nan')


class RewardEnsemble:
    """
    K independently initialised reward nets, each with its own optimiser state
    and shuffling stream. Return-based queries average over members unless a
    ``member`` index is given.
    """

    def __init__(self, input_dim: int, cfg: TrainConfig = TrainConfig()):
        self.cfg = cfg
        streams = np.random.SeedSequence(cfg.seed).spawn(2 * cfg.K)
        self.members = [RewardNet(input_dim, cfg.hidden_dims, rng=np.random.default_rng(streams[k]))
                        for k in range(cfg.K)]
        self._shuffle_rngs = [np.random.default_rng(streams[cfg.K + k]) for k in range(cfg.K)]
        self.optimizers = [make_optimizer(cfg.optimizer, m.params, cfg.learning_rate, cfg.momentum)
                           for m in self.members]

    @property
    def K(self) -> int:
        return len(self.members)

    @property
    def input_dim(self) -> int:
        return self.members[0].input_dim

    def _selected(self, member: Optional[int]) -> List[RewardNet]:
        return self.members if member is None else [self.members[member]]

    def step_rewards(self, features: np.ndarray, member: Optional[int] = None) -> np.ndarray:
        return np.mean([m.step_rewards(features) for m in self._selected(member)], axis=0)

    def member_returns(self, traj: Trajectory) -> np.ndarray:
        return np.array([m.predicted_return(traj) for m in self.members])

    def predicted_return(self, traj: Trajectory, member: Optional[int] = None) -> float:
        return float(np.mean([m.predicted_return(traj) for m in self._selected(member)]))

    def bt_prob(self, pair: TrajectoryPair, member: Optional[int] = None) -> float:
        return pairwise_softmax(self.predicted_return(pair.first, member),
                                self.predicted_return(pair.second, member))

    def snapshot(self) -> 'RewardEnsemble':
        """Frozen copy for the noise and denoise modules; optimiser state is not shared."""
        clone = RewardEnsemble.__new__(RewardEnsemble)
        clone.cfg = self.cfg
        clone.members = [m.copy() for m in self.members]
        clone._shuffle_rngs = []
        clone.optimizers = []
        return clone

    def save(self, path: str):
        state = {}
        for k, m in enumerate(self.members):
            state.update(m.network.state(prefix=f'm{k}_'))
        np.savez(path, K=np.asarray(self.K), **state)

    @classmethod
    def load(cls, path: str, cfg: TrainConfig = TrainConfig()) -> 'RewardEnsemble':
        with np.load(path, allow_pickle=False) as state:
            members = [RewardNet.from_network(DenseNetwork.from_state(state, prefix=f'm{k}_'))
                       for k in range(int(state['K']))]
        ens = cls.__new__(cls)
        ens.cfg = cfg
        ens.members = members
        streams = np.random.SeedSequence(cfg.seed).spawn(2 * len(members))
        ens._shuffle_rngs = [np.random.default_rng(streams[len(members) + k]) for k in range(len(members))]
        ens.optimizers = [make_optimizer(cfg.optimizer, m.params, cfg.learning_rate, cfg.momentum) for m in members]
        return ens


def train_update(ensemble: RewardEnsemble,
                 batch: Sequence[LabeledPreference],
                 cfg: Optional[TrainConfig] = None) -> tuple[RewardEnsemble, TrainReport]:
    """
    Minibatch gradient descent on the cross-entropy loss, each member over its
    own shuffle of ``batch``. Updates the ensemble in place and returns it with
    the per-member epoch losses.
    """
    if not batch:
        raise ValueError('batch must not be empty')
    cfg = cfg or ensemble.cfg
    report = TrainReport()
    for k, (member, optimizer, rng) in enumerate(zip(ensemble.members, ensemble.optimizers, ensemble._shuffle_rngs)):
        history = []
        for epoch in range(cfg.epochs_per_update):
            order = rng.permutation(len(batch))
            epoch_losses = []
            for start in range(0, len(batch), cfg.batch_size):
                minibatch = [batch[i] for i in order[start:start + cfg.batch_size]]
                loss, grads = member.loss_and_grads(minibatch)
                if not np.isfinite(loss) or not all(np.all(np.isfinite(g)) for g in grads):
                    logger.error(f'reward member {k} diverged at epoch {epoch}')
                    raise TrainingDivergedError('non-finite reward loss',
                                                {'member': k, 'epoch': epoch, 'loss': loss,
                                                 'batch_size': len(minibatch)})
                optimizer.step(member.params, grads)
                epoch_losses.append(loss * len(minibatch))
            history.append(float(np.sum(epoch_losses) / len(batch)))
        report.history.append(history)
        report.member_losses.append(history[-1] if history else float('nan'))
    logger.debug(f'reward update on {len(batch)} preferences, member losses {report.member_losses}')
    return ensemble, report


def ensemble_uncertainty(ensemble: RewardEnsemble, pair: TrajectoryPair) -> float:
    """Mean over members of |G(first) - G(second)|; lower means more uncertain."""
    diffs = ensemble.member_returns(pair.first) - ensemble.member_returns(pair.second)
    return float(np.mean(np.abs(diffs)))
