import numpy as np
import pytest

from prefnoise.agent import RandomPolicy, optimal_policy
from prefnoise.envs import EnvGridworld, EnvPointmass, collect, make_env, rollout, sample_pairs, true_return
from prefnoise.exceptions import ConfigurationError
from prefnoise.model import EnvSpec

from conftest import make_traj


class TestMakeEnv:
    def test_gridworld_8x8(self):
        env = make_env(EnvSpec(kind='gridworld', size=8, horizon=20))
        assert isinstance(env, EnvGridworld)
        assert env.n_states == 64
        assert env.n_actions == 4
        assert env.horizon == 20

    def test_from_dict(self):
        env = make_env({'kind': 'pointmass', 'horizon': 10})
        assert isinstance(env, EnvPointmass)
        assert env.state_dim == 2

    @pytest.mark.parametrize('bad', [
        {'kind': 'gridworld', 'horizon': 1},
        {'kind': 'gridworld', 'gamma': 0.0},
        {'kind': 'gridworld', 'size': 2},
        {'kind': 'cartpole'},
        {'kind': 'gridworld', 'colour': 'red'},
    ])
    def test_invalid_spec(self, bad):
        with pytest.raises(ConfigurationError):
            make_env(bad)


class TestGridworld:
    def test_observation_layout(self):
        env = make_env(EnvSpec(kind='gridworld', size=5))
        obs = env.observe(7)
        assert obs.shape == (27,)
        assert obs[7] == 1.0 and obs[:25].sum() == 1.0
        np.testing.assert_allclose(obs[25:], [1 / 4, 2 / 4])
        assert env.state_from_observation(obs) == 7

    def test_wall_bump_stays(self):
        env = make_env(EnvSpec(kind='gridworld', size=5))
        assert env.step(0, 0) == (0, 0.0)
        assert env.step(0, 2) == (0, 0.0)

    def test_goal_reward(self):
        env = make_env(EnvSpec(kind='gridworld', size=5))
        assert env.step(23, 3) == (24, 1.0)
        # staying on the goal keeps paying
        assert env.step(24, 1) == (24, 1.0)

    def test_reset_never_on_goal(self, rng):
        env = make_env(EnvSpec(kind='gridworld', size=3))
        assert all(env.reset(rng) != env.goal for _ in range(500))


class TestRollout:
    def test_shapes(self, grid_spec, rng):
        env = make_env(grid_spec)
        traj = rollout(env, RandomPolicy(env), rng, traj_id=3)
        assert traj.states.shape == (21, 27)
        assert traj.actions.shape == (20, 4)
        assert traj.true_rewards.shape == (20,)
        assert traj.step_features().shape == (20, 31)
        assert traj.id == 3

    def test_deterministic_under_seed(self, grid_spec):
        env = make_env(grid_spec)
        a = collect(env, RandomPolicy(env), 5, np.random.default_rng(9))
        b = collect(env, RandomPolicy(env), 5, np.random.default_rng(9))
        for x, y in zip(a, b):
            np.testing.assert_array_equal(x.states, y.states)
            np.testing.assert_array_equal(x.actions, y.actions)

    def test_true_return_discounting(self):
        traj = make_traj(0, [1.0, 1.0, 1.0])
        assert true_return(traj) == pytest.approx(3.0)
        assert true_return(traj, 0.5) == pytest.approx(1.75)

    def test_pointmass_reward(self, rng):
        env = make_env(EnvSpec(kind='pointmass', horizon=5))
        nxt, reward = env.step(np.array([0.5, -0.5]), np.array([1.0, 0.0]))
        np.testing.assert_allclose(nxt, [0.6, -0.5])
        assert reward == pytest.approx(-(0.36 + 0.25))

    def test_optimal_beats_random(self, grid_spec):
        env = make_env(grid_spec)
        best = [true_return(rollout(env, optimal_policy(env), np.random.default_rng(s))) for s in range(100)]
        rand = [true_return(rollout(env, RandomPolicy(env), np.random.default_rng(s))) for s in range(100)]
        assert np.mean(best) >= np.mean(rand)


class TestSamplePairs:
    def test_distinct_members(self, rng):
        buffer = [make_traj(i) for i in range(4)]
        for pair in sample_pairs(buffer, 50, rng):
            assert pair.first.id != pair.second.id

    def test_needs_two_trajectories(self, rng):
        with pytest.raises(ConfigurationError):
            sample_pairs([make_traj(0)], 1, rng)
