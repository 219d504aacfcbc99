import abc
import asyncio
import functools
import logging
import time
from dataclasses import dataclass
from typing import Awaitable, Callable, Optional

from prefnoise.exceptions import TransportException
from prefnoise.model import ModelChat, ModelChatResponse

logger = logging.getLogger(__name__)


@dataclass
class RetryConfig:
    attempts: int
    delay: float = 1.0


class BaseTransport(abc.ABC):
    """
    A chat-completion backend. ``generate``/``async_generate`` implementations
    are wrapped with the retry interceptors below, so a subclass only issues
    one request per call.
    """

    def __init__(self,
                 model: str | None,
                 retries: int = 3,
                 retry_delay: float = 1.0,
                 **kwargs):
        self.model = model
        # max_retries counts re-tries, so one more attempt in total
        self.retry_config = RetryConfig(retries + 1, retry_delay)
        self.kwargs = kwargs

    @staticmethod
    def _record_latency(response: ModelChatResponse, start_time: float) -> ModelChatResponse:
        response.usage.ttf = time.time() - start_time
        return response

    @staticmethod
    def async_intercept_generate(func: Callable[..., Awaitable[ModelChatResponse]]):
        @functools.wraps(func)
        async def wrapper(self, chat: ModelChat, **kwargs) -> ModelChatResponse:
            last_error: Optional[Exception] = None
            for attempt in range(self.retry_config.attempts):
                start_time = time.time()
                try:
                    response = await func(self, chat, **kwargs)
                    return self._record_latency(response, start_time)
                except Exception as e:
                    last_error = e
                    logger.error(f"Async generation attempt {attempt + 1} failed: {e}")
                    if attempt < self.retry_config.attempts - 1:
                        await asyncio.sleep(self.retry_config.delay)
            raise TransportException(f'{self.model}: all {self.retry_config.attempts} attempts failed',
                                     attempts=self.retry_config.attempts,
                                     last_error=last_error)

        return wrapper

    @staticmethod
    def sync_intercept_generate(func: Callable[..., ModelChatResponse]):
        @functools.wraps(func)
        def wrapper(self, chat: ModelChat, **kwargs) -> ModelChatResponse:
            last_error: Optional[Exception] = None
            for attempt in range(self.retry_config.attempts):
                start_time = time.time()
                try:
                    response = func(self, chat, **kwargs)
                    return self._record_latency(response, start_time)
                except Exception as e:
                    last_error = e
                    logger.error(f"Sync generation attempt {attempt + 1} failed: {e}")
                    if attempt < self.retry_config.attempts - 1:
                        time.sleep(self.retry_config.delay)
            raise TransportException(f'{self.model}: all {self.retry_config.attempts} attempts failed',
                                     attempts=self.retry_config.attempts,
                                     last_error=last_error)

        return wrapper

    @abc.abstractmethod
    def generate(self, chat: ModelChat, **kwargs) -> ModelChatResponse:
        """Generate a chat response synchronously."""
        pass

    @abc.abstractmethod
    async def async_generate(self, chat: ModelChat, **kwargs) -> ModelChatResponse:
        """Generate a chat response asynchronously."""
        pass
