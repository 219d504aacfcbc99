import numpy as np
import pytest

from prefnoise.nn import Adam, DenseNetwork, SGD, make_optimizer


def numeric_grad(f, params, eps=1e-6):
    grads = []
    for p in params:
        g = np.zeros_like(p)
        for idx in np.ndindex(p.shape):
            old = p[idx]
            p[idx] = old + eps
            up = f()
            p[idx] = old - eps
            down = f()
            p[idx] = old
            g[idx] = (up - down) / (2 * eps)
        grads.append(g)
    return grads


class TestDenseNetwork:
    def test_backward_matches_finite_differences(self, rng):
        net = DenseNetwork([4, 5, 3], ['tanh', 'linear'], rng=rng)
        x = rng.normal(size=(6, 4))
        target = rng.normal(size=(6, 3))

        def loss():
            return 0.5 * np.sum((net.predict(x) - target) ** 2)

        out, memory = net.forward(x)
        grads, dx = net.backward(out - target, memory)
        for analytic, numeric in zip(grads, numeric_grad(loss, net.params)):
            np.testing.assert_allclose(analytic, numeric, rtol=1e-5, atol=1e-7)

    def test_input_width_checked(self, rng):
        net = DenseNetwork([3, 2], ['linear'], rng=rng)
        with pytest.raises(ValueError):
            net.predict(np.zeros((1, 4)))

    def test_flat_roundtrip_and_copy(self, rng):
        net = DenseNetwork([3, 4, 1], ['tanh', 'tanh'], rng=rng)
        clone = net.copy()
        clone.set_flat(np.zeros(net.n_params))
        assert np.any(net.flat() != 0)
        np.testing.assert_array_equal(clone.flat(), 0.0)

    def test_state_roundtrip(self, rng):
        net = DenseNetwork([3, 4, 1], ['tanh', 'linear'], rng=rng)
        restored = DenseNetwork.from_state(net.state(prefix='x_'), prefix='x_')
        x = rng.normal(size=(5, 3))
        np.testing.assert_allclose(restored.predict(x), net.predict(x))


class TestOptimizers:
    @pytest.mark.parametrize('kind', ['sgd', 'adam'])
    def test_minimises_quadratic(self, kind):
        params = [np.array([3.0, -2.0])]
        opt = make_optimizer(kind, params, 0.05)
        for _ in range(500):
            opt.step(params, [2 * params[0]])
        np.testing.assert_allclose(params[0], 0.0, atol=0.1)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            make_optimizer('rmsprop', [np.zeros(1)], 0.1)

    def test_updates_in_place(self):
        p = np.ones(2)
        SGD([p], 0.1, momentum=0.0).step([p], [np.ones(2)])
        np.testing.assert_allclose(p, 0.9)
        q = np.ones(2)
        Adam([q], 0.1).step([q], [np.ones(2)])
        assert np.all(q < 1.0)
