from prefnoise.engine.base_transport import BaseTransport, RetryConfig
from prefnoise.engine.engine_openai import EngineOpenAI
from prefnoise.engine.engine_mock import EngineMock
