from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class RemoteTeacherConfig(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    endpoint_url: str = 'https://api.openai.com/v1'
    model_name: str = 'gpt-4o-mini'
    api_key_env_var: str = 'OPENAI_API_KEY'
    timeout: float = Field(default=60.0, gt=0)
    max_retries: int = Field(default=3, ge=0)
    retry_delay: float = Field(default=1.0, ge=0)
    cache_path: Optional[str] = None
    max_in_flight: int = Field(default=4, ge=1)
    temperature: float = 0.0


class RemoteVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: Literal['first', 'second', 'indifferent']
    raw_response: str
    latency: float = 0.0
    summary: str = ''

    @property
    def is_indifferent(self) -> bool:
        return self.label == 'indifferent'
