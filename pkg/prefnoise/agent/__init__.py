from prefnoise.agent.policy import RandomPolicy, TabularPolicy, LinearGaussianPolicy
from prefnoise.agent.q_learning import q_learning, value_iteration
from prefnoise.agent.cem import cem
from prefnoise.agent.evaluate import EvalResult, evaluate, optimal_policy, optimal_return
from prefnoise.agent.trainer import train_policy
