from typing import List, Sequence, Tuple

import numpy as np

from prefnoise.model import LabeledPreference, Trajectory, TrajectoryPair
from prefnoise.nn import DenseNetwork
from prefnoise.util.numeric import PROB_CLAMP, pairwise_softmax, sigmoid


class RewardNet:
    """
    Per-step reward R(s, a) in [-1, 1]: tanh hidden layers and a tanh output.
    """

    def __init__(self,
                 input_dim: int,
                 hidden_dims: Sequence[int] = (64, 64),
                 rng: np.random.Generator | None = None,
                 zero: bool = False):
        sizes = [input_dim, *hidden_dims, 1]
        if rng is None and not zero:
            rng = np.random.default_rng(0)
        self.network = DenseNetwork(sizes, ['tanh'] * (len(sizes) - 1), rng=rng, zero=zero)

    @classmethod
    def from_network(cls, network: DenseNetwork) -> 'RewardNet':
        net = cls.__new__(cls)
        net.network = network
        return net

    @property
    def input_dim(self) -> int:
        return self.network.sizes[0]

    @property
    def params(self) -> List[np.ndarray]:
        return self.network.params

    def copy(self) -> 'RewardNet':
        return RewardNet.from_network(self.network.copy())

    def step_rewards(self, features: np.ndarray) -> np.ndarray:
        return self.network.predict(features)[:, 0]

    def predicted_return(self, traj: Trajectory) -> float:
        """Undiscounted sum of predicted per-step rewards over the segment."""
        return float(self.step_rewards(traj.step_features()).sum())

    def bt_prob(self, pair: TrajectoryPair) -> float:
        return pairwise_softmax(self.predicted_return(pair.first), self.predicted_return(pair.second))

    def loss_and_grads(self, batch: Sequence[LabeledPreference]) -> Tuple[float, List[np.ndarray]]:
        """Mean cross-entropy over ``batch`` and its gradient w.r.t. every parameter."""
        if not batch:
            raise ValueError('batch must not be empty')
        segments = [s.pair.first for s in batch] + [s.pair.second for s in batch]
        lengths = np.array([seg.horizon for seg in segments])
        starts = np.concatenate([[0], np.cumsum(lengths)[:-1]])
        features = np.concatenate([seg.step_features() for seg in segments])

        out, memory = self.network.forward(features)
        sums = np.add.reduceat(out[:, 0], starts)
        n = len(batch)
        logits = sums[:n] - sums[n:]
        y = np.array([s.y for s in batch])

        p = sigmoid(logits)
        p_clamped = np.clip(p, PROB_CLAMP, 1.0 - PROB_CLAMP)
        loss = float(-np.mean(y * np.log(p_clamped) + (1.0 - y) * np.log(1.0 - p_clamped)))

        # d loss / d logit is (p - y) / n; zero where the clamp is active
        d_logit = np.where(p == p_clamped, (p - y) / n, 0.0)
        d_sums = np.concatenate([d_logit, -d_logit])
        d_out = np.repeat(d_sums, lengths)[:, None]
        grads, _ = self.network.backward(d_out, memory)
        return loss, grads


def bt_prob(net, pair: TrajectoryPair) -> float:
    return net.bt_prob(pair)


def predicted_return(net, traj: Trajectory) -> float:
    return net.predicted_return(traj)


def preference_probs(net, batch: Sequence[LabeledPreference]) -> np.ndarray:
    return np.array([net.bt_prob(s.pair) for s in batch])


def ce_loss(net, batch: Sequence[LabeledPreference]) -> float:
    """Mean binary cross-entropy of the observed labels, P clamped to [1e-7, 1 - 1e-7]."""
    if not batch:
        raise ValueError('batch must not be empty')
    p = np.clip(preference_probs(net, batch), PROB_CLAMP, 1.0 - PROB_CLAMP)
    y = np.array([s.y for s in batch])
    return float(-np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))


def label_accuracy(net, batch: Sequence[LabeledPreference]) -> float:
    """Fraction of pairs whose predicted preference matches the ground-truth label."""
    if not batch:
        return 0.0
    p = preference_probs(net, batch)
    truth = np.array([s.ground_truth.y for s in batch])
    return float(np.mean((p > 0.5) == (truth == 1.0)))
