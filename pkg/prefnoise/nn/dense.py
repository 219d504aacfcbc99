from typing import List, Sequence, Tuple

import numpy as np

ACTIVATIONS = ('tanh', 'linear')


def _activate(z: np.ndarray, kind: str) -> np.ndarray:
    return np.tanh(z) if kind == 'tanh' else z


def _activate_grad(a: np.ndarray, kind: str) -> np.ndarray:
    # derivative expressed through the activation output
    return 1.0 - a * a if kind == 'tanh' else np.ones_like(a)


class DenseNetwork:
    """
    Fully connected network over row batches, with manual backpropagation.

    Parameters are kept as a flat list ``[W0, b0, W1, b1, ...]`` with
    ``W_i`` shaped (fan_in, fan_out).
    """

    def __init__(self,
                 sizes: Sequence[int],
                 activations: Sequence[str],
                 rng: np.random.Generator | None = None,
                 zero: bool = False):
        if len(sizes) < 2:
            raise ValueError(f'need at least input and output sizes, got {list(sizes)}')
        if len(activations) != len(sizes) - 1:
            raise ValueError('one activation per layer is required')
        if any(a not in ACTIVATIONS for a in activations):
            raise ValueError(f'activations must be in {ACTIVATIONS}, got {list(activations)}')
        if any(s < 1 for s in sizes):
            raise ValueError(f'layer sizes must be >= 1, got {list(sizes)}')
        self.sizes = tuple(int(s) for s in sizes)
        self.activations = tuple(activations)
        self.params: List[np.ndarray] = []
        for fan_in, fan_out in zip(self.sizes[:-1], self.sizes[1:]):
            if zero:
                w = np.zeros((fan_in, fan_out))
            else:
                limit = np.sqrt(6.0 / (fan_in + fan_out))
                w = rng.uniform(-limit, limit, size=(fan_in, fan_out))
            self.params.extend([w, np.zeros(fan_out)])

    @property
    def n_layers(self) -> int:
        return len(self.sizes) - 1

    @property
    def n_params(self) -> int:
        return int(sum(p.size for p in self.params))

    def forward(self, x: np.ndarray) -> Tuple[np.ndarray, list]:
        a = np.atleast_2d(np.asarray(x, dtype=np.float64))
        if a.shape[1] != self.sizes[0]:
            raise ValueError(f'expected input width {self.sizes[0]}, got {a.shape[1]}')
        memory = [a]
        for i, kind in enumerate(self.activations):
            w, b = self.params[2 * i], self.params[2 * i + 1]
            a = _activate(a @ w + b, kind)
            memory.append(a)
        return a, memory

    def predict(self, x: np.ndarray) -> np.ndarray:
        return self.forward(x)[0]

    def backward(self, d_out: np.ndarray, memory: list) -> Tuple[List[np.ndarray], np.ndarray]:
        """Gradients w.r.t. every parameter and w.r.t. the input, given dL/d(output)."""
        grads = [None] * len(self.params)
        da = np.atleast_2d(d_out)
        for i in reversed(range(self.n_layers)):
            a_in, a_out = memory[i], memory[i + 1]
            dz = da * _activate_grad(a_out, self.activations[i])
            grads[2 * i] = a_in.T @ dz
            grads[2 * i + 1] = dz.sum(axis=0)
            da = dz @ self.params[2 * i].T
        return grads, da

    def flat(self) -> np.ndarray:
        return np.concatenate([p.ravel() for p in self.params])

    def set_flat(self, vector: np.ndarray):
        vector = np.asarray(vector, dtype=np.float64)
        if vector.size != self.n_params:
            raise ValueError(f'expected {self.n_params} values, got {vector.size}')
        offset = 0
        for i, p in enumerate(self.params):
            self.params[i] = vector[offset:offset + p.size].reshape(p.shape).copy()
            offset += p.size

    def copy(self) -> 'DenseNetwork':
        clone = DenseNetwork.__new__(DenseNetwork)
        clone.sizes = self.sizes
        clone.activations = self.activations
        clone.params = [p.copy() for p in self.params]
        return clone

    def state(self, prefix: str = '') -> dict:
        out = {f'{prefix}p{i}': p for i, p in enumerate(self.params)}
        out[f'{prefix}sizes'] = np.asarray(self.sizes)
        out[f'{prefix}activations'] = np.asarray(self.activations)
        return out

    @classmethod
    def from_state(cls, state, prefix: str = '') -> 'DenseNetwork':
        net = cls.__new__(cls)
        net.sizes = tuple(int(s) for s in state[f'{prefix}sizes'])
        net.activations = tuple(str(a) for a in state[f'{prefix}activations'])
        net.params = [np.array(state[f'{prefix}p{i}'], dtype=np.float64) for i in range(2 * (len(net.sizes) - 1))]
        return net

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(p)) for p in self.params)
