from prefnoise.nn.dense import DenseNetwork
from prefnoise.nn.optim import SGD, Adam, make_optimizer
