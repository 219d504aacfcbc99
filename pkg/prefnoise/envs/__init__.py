from prefnoise.envs.base_env import Environment, Policy
from prefnoise.envs.env_gridworld import EnvGridworld
from prefnoise.envs.env_pointmass import EnvPointmass
from prefnoise.envs.rollout import make_env, rollout, collect, true_return, sample_pairs
