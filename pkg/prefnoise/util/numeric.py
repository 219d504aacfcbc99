import numpy as np

PROB_CLAMP = 1e-7
ONE_HOT_SMOOTHING = 1e-6


def sigmoid(x):
    """Numerically stable logistic function, scalar or array."""
    x = np.asarray(x, dtype=np.float64)
    z = np.exp(-np.abs(x))
    out = np.where(x >= 0, 1.0 / (1.0 + z), z / (1.0 + z))
    return out if out.ndim else float(out)


def pairwise_softmax(first, second):
    """P(first wins) = e^a / (e^a + e^b), evaluated through log-sum-exp."""
    a = np.asarray(first, dtype=np.float64)
    b = np.asarray(second, dtype=np.float64)
    m = np.maximum(a, b)
    log_z = m + np.log(np.exp(a - m) + np.exp(b - m))
    p = np.exp(a - log_z)
    return p if p.ndim else float(p)


def smoothed_one_hot(first: bool, delta: float = ONE_HOT_SMOOTHING) -> np.ndarray:
    return np.array([1.0 - delta, delta]) if first else np.array([delta, 1.0 - delta])


def kl_divergence(p: np.ndarray, q: np.ndarray) -> float:
    p = np.asarray(p, dtype=np.float64)
    q = np.clip(np.asarray(q, dtype=np.float64), PROB_CLAMP, 1.0)
    mask = p > 0
    return float(np.sum(p[mask] * np.log(p[mask] / q[mask])))


def rank_normalize(scores) -> np.ndarray:
    """Ordinal ranks scaled to [0, 1]; equal scores keep index order."""
    scores = np.asarray(scores, dtype=np.float64)
    n = len(scores)
    if n == 0:
        return scores
    if n == 1:
        return np.zeros(1)
    order = np.argsort(scores, kind='stable')
    ranks = np.empty(n, dtype=np.float64)
    ranks[order] = np.arange(n, dtype=np.float64)
    return ranks / (n - 1)
