# https://platform.openai.com/docs/api-reference/chat/create
import json
import os
from typing import Dict, Tuple

from prefnoise.engine.base_transport import BaseTransport
from prefnoise.exceptions import ConfigurationError
from prefnoise.model import ModelChat, ModelChatResponse, RemoteTeacherConfig
from prefnoise.util.http import AsyncHttpClient, HttpClient


class EngineOpenAI(BaseTransport):
    """Any endpoint speaking the OpenAI ``/chat/completions`` protocol."""

    def __init__(self,
                 api_key: str,
                 base_url: str = 'https://api.openai.com/v1',
                 timeout: float = 60.0,
                 temperature: float = 0.0,
                 headers: Dict[str, str] = None,
                 **kwargs) -> None:
        super().__init__(**kwargs)
        self.base_url = base_url.rstrip('/')
        self.timeout = timeout
        self.temperature = temperature
        self.headers = dict(headers or {})
        self.headers.setdefault('user-agent', 'prefnoise-remote-teacher')
        self.headers.setdefault('accept', 'application/json')
        self.headers.setdefault('Content-Type', 'application/json')
        self.headers.setdefault('Authorization', f'Bearer {api_key}')

    @classmethod
    def from_config(cls, cfg: RemoteTeacherConfig) -> 'EngineOpenAI':
        api_key = os.environ.get(cfg.api_key_env_var)
        if not api_key:
            raise ConfigurationError(f'environment variable {cfg.api_key_env_var} is not set')
        return cls(api_key=api_key,
                   base_url=cfg.endpoint_url,
                   timeout=cfg.timeout,
                   temperature=cfg.temperature,
                   model=cfg.model_name,
                   retries=cfg.max_retries,
                   retry_delay=cfg.retry_delay)

    @property
    def url(self) -> str:
        return self.base_url + '/chat/completions'

    def prepare_data(self, chat: ModelChat, **kwargs) -> Tuple[bytes, Dict[str, str]]:
        data = {
            "model": self.model,
            "messages": chat.get_messages(),
            "temperature": self.temperature,
            **kwargs,
        }
        return json.dumps(data).encode('utf-8'), self.headers

    @BaseTransport.async_intercept_generate
    async def async_generate(self, chat: ModelChat, **kwargs) -> ModelChatResponse:
        data, headers = self.prepare_data(chat, **kwargs)
        async with AsyncHttpClient(timeout=self.timeout) as client:
            response = await client.post_json(url=self.url, data=data, headers=headers)
            return ModelChatResponse.from_completion(response)

    @BaseTransport.sync_intercept_generate
    def generate(self, chat: ModelChat, **kwargs) -> ModelChatResponse:
        data, headers = self.prepare_data(chat, **kwargs)
        with HttpClient(timeout=self.timeout) as client:
            response = client.post_json(url=self.url, data=data, headers=headers)
            return ModelChatResponse.from_completion(response)
