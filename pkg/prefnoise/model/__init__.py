from prefnoise.model.ModelChatResponse import ModelChatResponse, UsageModel
from prefnoise.model.ModelChat import ModelChat
from prefnoise.model.ModelEnv import EnvSpec, Trajectory, TrajectoryPair
from prefnoise.model.ModelPreference import PreferenceLabel, LabeledPreference, Tie, TIE
from prefnoise.model.ModelNoise import NoiseKind, NoiseModelSpec, NoiseScore
from prefnoise.model.ModelTrain import TrainConfig, EncoderConfig, AgentConfig
from prefnoise.model.ModelDenoise import DenoiserConfig, DenoiseReport
from prefnoise.model.ModelRemote import RemoteTeacherConfig, RemoteVerdict
from prefnoise.model.ModelExperiment import (ExperimentConfig, ExperimentRecord, ProtocolConfig,
                                             TeacherConfig, CSV_HEADER, SCHEMA_VERSION)
